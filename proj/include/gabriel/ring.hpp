#pragma once

#include "gabriel/abelian.hpp"
#include "gabriel/integer.hpp"
#include "gabriel/matrix.hpp"

#include <memory>
#include <string>
#include <vector>

namespace gabriel {

enum class RingClass { Integers, IntegersMod, UnivariatePoly, QuadraticOrder, UpperTriangular2 };

/// A member of the closed family of supported rings.
class Ring {
 public:
  static Ring integers();
  static Ring integers_mod(const Integer& n);
  /// Univariate polynomials over ℚ (p = 0) or 𝔽_p.
  static Ring poly(const Integer& p);
  static Ring quadratic(const Integer& d);
  static Ring upper_triangular(const Integer& p);

  RingClass cls() const noexcept { return cls_; }
  const Integer& param() const noexcept { return param_; }
  bool commutative() const noexcept { return cls_ != RingClass::UpperTriangular2; }
  bool finite() const noexcept { return cls_ == RingClass::IntegersMod || cls_ == RingClass::UpperTriangular2; }
  /// Rings whose additive group is finitely generated (every class except polynomials).
  bool lattice_backed() const noexcept { return cls_ != RingClass::UnivariatePoly; }
  bool is_domain() const;

  std::string to_string() const;
  friend bool operator==(const Ring& a, const Ring& b) = default;

 private:
  Ring(RingClass cls, Integer param) : cls_(cls), param_(std::move(param)) {}
  RingClass cls_ = RingClass::Integers;
  Integer param_ = 0;
};

using Poly = std::vector<Rational>;  // coefficients, low degree first, no trailing zeros

/// Canonical ring element. Lattice-backed classes store additive coordinates in `coords`
/// (ℤ: {n}; ℤ/n: {r}; ℤ[√d]: {a, b}; UT₂: {a, b, c} for [[a,b],[0,c]]); polynomials use `poly`.
class Element {
 public:
  Element() = default;
  Element(Ring ring, Vec coords);
  Element(Ring ring, Poly poly);

  static Element zero(const Ring& r);
  static Element one(const Ring& r);
  static Element from_int(const Ring& r, const Integer& n);

  const Ring& ring() const noexcept { return ring_; }
  const Vec& coords() const noexcept { return coords_; }
  const Poly& poly() const noexcept { return poly_; }
  bool is_zero() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;

  std::string to_string() const;
  friend bool operator==(const Element& a, const Element& b) = default;
  friend auto operator<=>(const Element& a, const Element& b) {
    if (a.coords_ != b.coords_) return a.coords_ < b.coords_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.poly_ != b.poly_) return a.poly_ < b.poly_ ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Ring ring_ = Ring::integers();
  Vec coords_;
  Poly poly_;
};

Element parse_element(const Ring& r, const std::string& text);

/// Polynomial arithmetic over ℚ (p = 0) or 𝔽_p.
namespace polyops {
Poly normalize(Poly a, const Integer& p);
Poly add(const Poly& a, const Poly& b, const Integer& p);
Poly sub(const Poly& a, const Poly& b, const Integer& p);
Poly mul(const Poly& a, const Poly& b, const Integer& p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Integer& p);
Poly gcd(const Poly& a, const Poly& b, const Integer& p);
Poly monic(const Poly& a, const Integer& p);
int degree(const Poly& a);
std::string to_string(const Poly& a);
}  // namespace polyops

/// A ring with finitely generated additive group, presented by a ℤ-basis and structure constants.
struct ZAlgebra {
  std::string name;
  AbelianGroup group;                     // additive group in canonical coordinates
  std::vector<std::vector<Vec>> product;  // product[l][m] = coords(b_l · b_m)
  Vec one;
  bool commutative = true;

  std::size_t dim() const { return group.ngens(); }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec add(const Vec& x, const Vec& y) const { return group.reduce(x + y); }
  /// Matrix of x ↦ x·y.
  Matrix right_mult(const Vec& y) const;
  /// Matrix of x ↦ y·x.
  Matrix left_mult(const Vec& y) const;
  Vec basis(std::size_t l) const { return group.unit(l); }
  bool finite() const { return group.finite(); }
};

using AlgebraPtr = std::shared_ptr<const ZAlgebra>;

/// ℤ-algebra of a lattice-backed ring class; coordinates agree with Element::coords.
AlgebraPtr algebra_of(const Ring& r);
/// ℤ as a ℤ-algebra (used for plain abelian groups).
AlgebraPtr integers_algebra();
/// Full matrix ring M₂(𝔽_p) with basis e11, e12, e21, e22.
AlgebraPtr matrix_algebra(const Integer& p);
/// Quotient R/L for a two-sided ideal lattice L (rows in R-coordinates); also returns the projection.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  Matrix projection;  // R coords -> quotient coords
  Matrix lift;
};
QuotientAlgebra quotient_algebra(const AlgebraPtr& r, const Matrix& ideal_rows, const std::string& name);

Vec coords_of(const Element& e);
Element element_of(const Ring& r, const Vec& coords);

/// All elements of a finite ring.
std::vector<Element> enumerate(const Ring& r);

}  // namespace gabriel
