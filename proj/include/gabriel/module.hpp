#pragma once

#include "gabriel/abelian.hpp"
#include "gabriel/ideal.hpp"
#include "gabriel/ring.hpp"

#include <string>
#include <vector>

namespace gabriel {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string to_string(Side s);

/// Module over a ℤ-algebra stored as an abelian group in canonical coordinates together with
/// one action matrix per basis element of the algebra (x ↦ x·b_l for right modules, x ↦ b_l·x for left).
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr alg, Side side, AbelianGroup group, std::vector<Matrix> actions);
  static Module free(const AlgebraPtr& alg, Side side, std::size_t rank);
  static Module zero(const AlgebraPtr& alg, Side side);

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  Side side() const noexcept { return side_; }
  const AbelianGroup& group() const noexcept { return group_; }
  std::size_t ngens() const noexcept { return group_.ngens(); }
  const std::vector<Matrix>& actions() const noexcept { return actions_; }
  bool finite() const { return group_.finite(); }
  bool is_zero() const { return group_.trivial(); }

  /// Matrix of the action of the algebra element with coordinates r.
  Matrix action(const Vec& r) const;
  Vec act(const Vec& x, const Vec& r) const;
  /// Same module viewed from the other side; requires a commutative algebra.
  Module with_side(Side s) const;
  /// Checks the module axioms on basis elements.
  bool valid() const;

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  Side side_ = Side::Right;
  AbelianGroup group_;
  std::vector<Matrix> actions_;
};

/// Finitely presented module: generators modulo the submodule spanned by relation rows
/// (right modules: Σ ρ·R; left modules: Σ R·ρ).
struct FPModule {
  Ring ring = Ring::integers();
  Side side = Side::Right;
  std::size_t generators = 0;
  std::vector<std::vector<Element>> relations;
};

/// A realized module together with the images of the presentation generators.
struct Realized {
  Module module;
  Matrix generator_images;  // generators × module coordinates
};

Realized realize(const FPModule& m);
/// The module map from a realized presentation sending the presentation generators to images (rows in target).
Matrix map_from_generators(const Realized& source, const Module& target, const Matrix& images);
/// Presentation over an arbitrary ℤ-algebra: rows are relation vectors of length gens·dim.
Realized realize(const AlgebraPtr& alg, Side side, std::size_t gens, const std::vector<Vec>& relations);

/// R/I as a right module.
Module cyclic_module(const Ideal& i);
/// I as a right module with its inclusion into R.
struct IdealModule {
  Module module;
  Matrix inclusion;  // module coords -> ring coords
};
IdealModule ideal_module(const Ideal& i);

/// Rows spanning the submodule generated by gens (ℤ-span of the translates by basis elements).
Matrix submodule_span(const Module& m, const Matrix& gens);

struct SubmoduleResult {
  Module module;
  Matrix inclusion;
};
SubmoduleResult submodule(const Module& m, const Matrix& gens);

struct QuotientModule {
  Module module;
  Matrix projection;
  Matrix lift;
};
QuotientModule quotient_module(const Module& m, const Matrix& gens);

struct DirectSum {
  Module module;
  std::vector<Matrix> injections;
  std::vector<Matrix> projections;
};
DirectSum direct_sum(const std::vector<Module>& parts);

/// The matrix is a module homomorphism source -> target.
bool is_module_map(const Module& source, const Module& target, const Matrix& f);
Matrix identity_map(const Module& m);
Matrix compose(const Module& target, const Matrix& first, const Matrix& second);

struct KernelResult {
  Module module;
  Matrix inclusion;
};
KernelResult module_kernel(const Module& source, const Module& target, const Matrix& f);
QuotientModule module_cokernel(const Module& source, const Module& target, const Matrix& f);
SubmoduleResult module_image(const Module& source, const Module& target, const Matrix& f);

/// Hom_R(M, N) as a subgroup of N^k (images of the canonical generators of M).
struct HomSpace {
  Module source;
  Module target;
  AbelianGroup ambient;  // N^k
  Subgroup sub;
  Module module;  // over the same algebra when commutative, otherwise a ℤ-module
  Matrix map_of(const Vec& coords) const;
  Vec coords_of(const Matrix& f) const;
};
HomSpace hom(const Module& m, const Module& n);

/// M ⊗_R N for a right module M and a left module N (any sides when commutative).
struct TensorProduct {
  Module left_factor;
  Module right_factor;
  Presented presented;
  Module module;
  Vec pure(const Vec& m, const Vec& n) const;
};
TensorProduct tensor(const Module& m, const Module& n);

/// Pontryagin dual Hom(N, ℚ/ℤ) of a finite module, a module on the opposite side.
Module char_dual(const Module& n);
/// Value in [0,1) of the character with coordinates k on the element x of a finite group.
Rational pair_character(const AbelianGroup& g, const Vec& k, const Vec& x);

/// Chain complex of finitely generated free modules F_0 <- F_1 <- ...; d[n] lists, for each free
/// generator of F_{n+1}, its image in F_n as a coordinate vector of length ranks[n]·dim.
struct FreeComplex {
  AlgebraPtr alg;
  Side side = Side::Right;
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
};

Module free_module(const FreeComplex& c, std::size_t n);
/// ℤ-matrix of the R-linear map from the free module of the given rank sending generator j to images.row(j).
Matrix free_map_matrix(const AlgebraPtr& alg, Side side, std::size_t rank, const Module& target, const Matrix& images);

struct Resolution {
  Module module;
  FreeComplex complex;
  Matrix augmentation;  // free generators of F_0 -> module elements
};

/// Free resolution of the given length (number of differentials); size_budget bounds the ranks.
Resolution resolve(const Module& m, std::size_t length, std::size_t size_budget = 256);

/// H^n of Hom(F_•, N).
struct Cohomology {
  AbelianGroup cochains;
  Subquotient h;
  Matrix d_out;  // C^n -> C^{n+1}
  Matrix d_in;   // C^{n-1} -> C^n
};
Matrix cochain_map(const FreeComplex& c, const Module& n, std::size_t degree);
AbelianGroup cochain_group(const FreeComplex& c, const Module& n, std::size_t degree);
Cohomology hom_cohomology(const FreeComplex& c, const Module& n, std::size_t degree);

AbelianGroup ext(const Module& m, const Module& n, std::size_t degree);

/// Chain map between resolutions lifting f: P.module -> Q.module; entry n lists images of F_n generators of P in Q_n.
std::vector<Matrix> lift_chain_map(const Resolution& p, const Resolution& q, const Matrix& f, std::size_t length);
/// Cochain-level pullback along a chain map component (generator images in the other complex).
Matrix pullback_cochains(const AlgebraPtr& alg, const Module& n, std::size_t target_rank,
                         const Matrix& generator_images);
/// Matrix between cohomology groups induced by a cochain map.
Matrix induced_on_cohomology(const Cohomology& from, const Cohomology& to, const Matrix& cochain_map);

/// Isomorphism type comparison for finitely generated groups.
bool isomorphic_groups(const AbelianGroup& a, const AbelianGroup& b);

/// Invariant summary: free rank and torsion invariants for PID classes, element count and action
/// profile for finite rings.
struct NormalForm {
  std::size_t free_rank = 0;
  std::vector<Integer> invariants;
  std::vector<std::string> poly_invariants;  // monic invariant factors over polynomial rings
  std::optional<Integer> size;
  std::vector<std::pair<std::string, std::string>> profile;  // (element, sizes of image and kernel)
  std::vector<std::string> elements;
  std::string to_string() const;
  friend bool operator==(const NormalForm& a, const NormalForm& b) = default;
};
NormalForm normal_form(const FPModule& m);

}  // namespace gabriel
