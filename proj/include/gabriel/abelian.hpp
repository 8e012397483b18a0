#pragma once

#include "gabriel/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gabriel {

/// Finitely generated abelian group ⊕ ℤ/d_i with d_i = 0 for free summands.
/// Canonical form: torsion moduli d_1 | d_2 | ... (all >= 2) followed by zeros.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<Integer> moduli);
  static AbelianGroup free(std::size_t rank);
  static AbelianGroup cyclic(const Integer& n);

  std::size_t ngens() const noexcept { return moduli_.size(); }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }
  std::size_t free_rank() const;
  std::vector<Integer> torsion() const;
  bool finite() const { return free_rank() == 0; }
  bool trivial() const { return moduli_.empty(); }
  /// Order of a finite group.
  Integer order() const;
  /// Smallest m > 0 with m·G = 0 for finite G.
  Integer exponent() const;

  Vec reduce(Vec v) const;
  Matrix reduce_rows(Matrix m) const;
  Vec zero() const { return zero_vec(ngens()); }
  Vec unit(std::size_t i) const;
  /// Rows d_i·e_i for the torsion moduli.
  Matrix relations() const;
  /// All elements of a finite group in mixed-radix order.
  std::vector<Vec> elements() const;
  /// Mixed-radix index of a reduced element of a finite group.
  std::size_t index_of(const Vec& v) const;
  /// #{x : m·x = 0} for a finite group.
  Integer count_killed_by(const Integer& m) const;

  std::string to_string() const;
  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) = default;

 private:
  std::vector<Integer> moduli_;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
/// k copies of a with coordinates concatenated, not canonicalized.
AbelianGroup power(const AbelianGroup& a, std::size_t k);

/// Group ℤ^n / rowspan(relations) in canonical form with coordinate changes.
struct Presented {
  AbelianGroup group;
  Matrix to_canon;  // n × k: raw vector -> canonical coordinates (then reduce)
  Matrix to_raw;    // k × n: canonical generator -> raw vector
};

Presented present(std::size_t n_raw, const Matrix& relations);

/// Subgroup of G generated by rows of gens.
struct Subgroup {
  AbelianGroup group;
  Matrix inclusion;  // k_sub × k_G
  Matrix gens;       // generator rows in G coordinates
  Matrix to_canon;   // generator-combination coefficients -> subgroup coordinates
};

Subgroup subgroup(const AbelianGroup& g, const Matrix& gens);

/// Coordinates (in the subgroup's canonical basis) of an element known to lie in the subgroup.
std::optional<Vec> subgroup_coords(const AbelianGroup& g, const Subgroup& s, const Vec& v);

struct Quotient {
  AbelianGroup group;
  Matrix projection;  // k_G × k_Q
  Matrix lift;        // k_Q × k_G
};

Quotient quotient(const AbelianGroup& g, const Matrix& gens);

/// Generators (rows in source coordinates) of the kernel of f: A -> B.
Matrix kernel_gens(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f);
/// Generators of f^{-1}(<target_gens>).
Matrix preimage_gens(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f, const Matrix& target_gens);

bool in_subgroup(const AbelianGroup& g, const Matrix& gens, const Vec& v);
/// x with x·gens ≡ v in G, if any.
std::optional<Vec> express(const AbelianGroup& g, const Matrix& gens, const Vec& v);
bool subgroup_contains(const AbelianGroup& g, const Matrix& big, const Matrix& small);
bool same_subgroup(const AbelianGroup& g, const Matrix& a, const Matrix& b);
bool is_injective(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f);
bool is_surjective(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f);
/// f is a well-defined homomorphism A -> B (torsion relations map to zero).
bool is_homomorphism(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f);
bool is_zero_map(const AbelianGroup& b, const Matrix& f);
bool maps_equal(const AbelianGroup& b, const Matrix& f, const Matrix& g);

/// Homology Z/B for subgroups B ⊆ Z of G.
struct Subquotient {
  AbelianGroup group;
  Subgroup z;
  Quotient q;   // z.group / B
  Matrix lift;  // class generator -> representative in G
};

Subquotient subquotient(const AbelianGroup& g, const Matrix& z_gens, const Matrix& b_gens);
/// Class of an element of Z.
Vec class_of(const AbelianGroup& g, const Subquotient& h, const Vec& z);

}  // namespace gabriel
