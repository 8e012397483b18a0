#pragma once

#include "gabriel/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gabriel {

/// Finitely generated right ideal with a canonical form: a Hermite lattice basis
/// (including the torsion of R) for lattice-backed rings, a monic generator for polynomials.
class Ideal {
 public:
  Ideal() = default;
  /// Right ideal generated by gens; an empty list is rejected.
  Ideal(const Ring& r, std::vector<Element> gens);
  static Ideal zero(const Ring& r);
  static Ideal unit(const Ring& r);
  static Ideal principal(const Element& g);
  /// Right ideal whose additive group is spanned by rows (lattice-backed rings only; rows must span a right ideal).
  static Ideal from_lattice(const Ring& r, const Matrix& rows);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Element>& generators() const noexcept { return gens_; }
  /// Canonical generators: the single generator for ℤ, ℤ/n and polynomials, the lattice rows otherwise.
  std::vector<Element> canonical_generators() const;
  /// Hermite basis (rows in ring coordinates), torsion of R included.
  const Matrix& lattice() const;
  const Poly& poly_generator() const;

  bool contains(const Element& e) const;
  bool contains(const Ideal& other) const;
  bool is_zero() const;
  bool is_unit() const;
  bool is_two_sided() const;
  /// |R/I| when finite; nullopt for infinite index.
  std::optional<Integer> index() const;
  /// Size measure used by budgets: the index, or the degree of the generator for polynomials.
  std::optional<Integer> norm() const;
  /// Elements of a finite ring lying in the ideal, sorted.
  std::vector<Element> elements() const;

  std::string to_string() const;
  friend bool operator==(const Ideal& a, const Ideal& b);
  friend bool operator<(const Ideal& a, const Ideal& b);

 private:
  void canonicalize();
  Ring ring_ = Ring::integers();
  std::vector<Element> gens_;
  Matrix lattice_;
  Poly poly_;
};

/// Rows spanning the right ideal generated by gens (ℤ-span of g·b_l plus torsion).
Matrix right_ideal_rows(const Ring& r, const std::vector<Element>& gens);

Ideal colon_ideal(const Ideal& i, const Element& s);
Ideal ideal_sum(const Ideal& i, const Ideal& j);
Ideal ideal_intersect(const Ideal& i, const Ideal& j);
/// s₁K + … + s_mK.
Ideal translate_product(const std::vector<Element>& gens, const Ideal& k);
/// I·J = right ideal generated by products of generators.
Ideal ideal_product(const Ideal& i, const Ideal& j);
Ideal ideal_power(const Ideal& i, unsigned n);

/// Left multiplication by scalar from R/J to R/I, valid when scalar·J ⊆ I.
class QFMorphism {
 public:
  QFMorphism(Ideal source, Ideal target, Element scalar);
  const Ideal& source() const noexcept { return source_; }
  const Ideal& target() const noexcept { return target_; }
  const Element& scalar() const noexcept { return scalar_; }
  friend bool operator==(const QFMorphism& a, const QFMorphism& b) = default;

 private:
  Ideal source_;
  Ideal target_;
  Element scalar_;
};

/// f ∘ g for g: R/K -> R/J and f: R/J -> R/I; the composite multiplies by f.scalar·g.scalar.
QFMorphism qf_compose(const QFMorphism& f, const QFMorphism& g);

/// All right ideals of a finite ring, sorted by size then canonical form.
std::vector<Ideal> all_right_ideals(const Ring& r);

}  // namespace gabriel
