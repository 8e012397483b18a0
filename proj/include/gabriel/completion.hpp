#pragma once

#include "gabriel/module.hpp"
#include "gabriel/topology.hpp"
#include "gabriel/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gabriel {

/// Element of the completed ring at truncation: one residue class per level.
struct TowerElement {
  std::vector<Vec> levels;
  friend bool operator==(const TowerElement& a, const TowerElement& b) = default;
};

/// The completion lim R/I_n along a chain of open right ideals, truncated at its depth.
struct TruncatedTopRing {
  TopologyBase base;
  std::vector<Ideal> ideals;         // I_1 ⊇ I_2 ⊇ ...
  std::vector<Quotient> levels;      // R -> R/I_n as abelian groups
  std::vector<Matrix> transitions;   // R/I_{n+1} -> R/I_n
  std::vector<std::optional<QuotientAlgebra>> native;  // quotient rings R/I_n for two-sided levels
  Check multiplication;              // the lifting rule against the native quotient rings
  Check transitions_surjective;

  std::size_t depth() const { return ideals.size(); }
  const Ring& ring() const { return base.ring; }
  TowerElement project(const Element& r) const;
  TowerElement zero() const;
  TowerElement one() const;
  /// Representative in R of the level-n component (1-based).
  Element lift(const TowerElement& a, std::size_t n) const;
  TowerElement add(const TowerElement& a, const TowerElement& b) const;
  /// Level n: s̃ r̃_m + I_n for the shallowest level I_m ⊆ (I_n : s̃); throws DepthMismatch past the depth.
  TowerElement mul(const TowerElement& a, const TowerElement& b) const;
  bool compatible(const TowerElement& a) const;
  /// Smallest level n with I_m ⊆ j (1-based), if any.
  std::optional<std::size_t> level_inside(const Ideal& j) const;
  std::string to_string(const TowerElement& a) const;
  std::string to_string() const;
};

/// Levels of a chain base, or the totally ordered members of a finite base; throws ChainRequired otherwise.
std::vector<Ideal> chain_levels(const TopologyBase& b, std::size_t depth);
TruncatedTopRing complete_ring(const TopologyBase& b, std::size_t depth, unsigned seed = 0);

/// R/I as a left R-module for a two-sided ideal I.
Module left_quotient_module(const Ideal& i);

enum class ContraKind { FreeFinite, Presented, HomDual };
std::string to_string(ContraKind k);

/// A left contramodule at truncation: the deepest quotient C/I_kC (killed by I_k) and its levels C/I_nC.
struct ContraTrunc {
  TruncatedTopRing ring;
  ContraKind kind = ContraKind::Presented;
  std::size_t generators = 0;  // |X| for free contramodules
  Module top;
  std::vector<QuotientModule> levels;  // top -> C/I_n C
  std::vector<Matrix> transitions;     // level n+1 -> level n

  std::size_t depth() const { return levels.size(); }
  std::string to_string() const;
};

/// Contramodule with the given top module, passing to its quotient by I_k if needed.
ContraTrunc contramodule(const TruncatedTopRing& r, const Module& top, ContraKind kind = ContraKind::Presented);
/// The free contramodule on |X| generators: level n is (R/I_n)[X].
ContraTrunc free_contramodule(const TruncatedTopRing& r, std::size_t generators);
/// Hom_ℤ(N, ℚ/ℤ) for a finite right module N killed by the deepest level.
ContraTrunc hom_dual(const TruncatedTopRing& r, const Module& n);

struct Completion {
  ContraTrunc contra;
  Matrix lambda;  // M -> top of the completion
  /// M/I_nM -> Λ/I_nΛ induced by λ is bijective at every level.
  Check level_isomorphisms;
};

/// Λ(M) = lim M/I_nM for a left module M (any side over commutative rings).
Completion complete_module(const Module& m, const TopologyBase& b, std::size_t depth);

/// Finite formal linear combination Σ a_i c_i with tower coefficients and elements of the top module.
using FormalSum = std::vector<std::pair<TowerElement, Vec>>;
/// Σ a_i (Σ_j b_ij c_ij), an element of R[[R[[C]]]].
using NestedSum = std::vector<std::pair<TowerElement, FormalSum>>;

Vec contraaction(const ContraTrunc& c, const FormalSum& sum);
/// ε(c) = 1·c.
FormalSum point_measure(const ContraTrunc& c, const Vec& x);
/// Opening of parentheses: Σ_{i,j} (a_i b_ij) c_ij.
FormalSum open_parentheses(const ContraTrunc& c, const NestedSum& s);
/// Σ_i a_i π(Σ_j b_ij c_ij).
FormalSum apply_contraaction_inside(const ContraTrunc& c, const NestedSum& s);
/// Unit and associativity on random formal sums.
Check check_monad_laws(const ContraTrunc& c, unsigned seed, std::size_t samples = 20);

struct StarReport {
  std::vector<Matrix> star;     // I⋆C_n, generators in C_n coordinates
  std::vector<Matrix> product;  // I·C_n
  Check contains;               // I·C ⊆ I⋆C
  Check equal;                  // I·C = I⋆C
};

/// I⋆C at every level: the image of I-coefficient formal sums, against I·C spanned by generators of I.
StarReport star_subgroup(const Ideal& i, const ContraTrunc& c);

/// Zero-convergent family: r_x lies in the chain level `level` (0 means only in R).
struct FamilyEntry {
  Element r;
  std::size_t level = 0;
};

struct RewriteEntry {
  std::size_t j = 0;
  std::size_t x = 0;
  std::size_t level = 0;  // t_{j,x} ∈ J_level
  Element t;
};

struct RewriteTable {
  std::vector<Element> generators;
  std::vector<std::size_t> thresholds;  // x_i: r_x ∈ H_i for x > x_i
  std::vector<RewriteEntry> entries;
  Check roundtrip;     // ρ(r_x) = Σ_j ρ(s_j) t_{j,x} at every level
  Check convergence;   // t_{j,x} lies in J_i for x_i < x
};

/// Coefficient table t_{j,x} with r_x = Σ_j s_j t_{j,x}; throws NotInIdeal or NotZeroConvergent.
RewriteTable strong_generation_rewrite(const std::vector<FamilyEntry>& family, const std::vector<Element>& gens,
                                       const TruncatedTopRing& r);

enum class Variance { Covariant, Contravariant };
std::string to_string(Variance v);

/// Additive functor on the cyclic discrete modules R/K for open K ⊇ I_k; a morphism R/J -> R/I is
/// left multiplication by a scalar s with sJ ⊆ I.
struct FSystem {
  Variance variance = Variance::Covariant;
  TruncatedTopRing ring;
  std::string name;
  std::function<AbelianGroup(const Ideal&)> value;
  std::function<Matrix(const QFMorphism&)> action;
};

/// tp(M): R/K ↦ M/KM for a left module M.
FSystem tensor_system(const TruncatedTopRing& r, const Module& m);
/// CT(C): R/K ↦ C/(K⋆C).
FSystem contratensor_system(const ContraTrunc& c);
/// Dh(N): R/K ↦ Hom(R/K, N) = {b : bK = 0} for a right module N.
FSystem discrete_hom_system(const TruncatedTopRing& r, const Module& n);

/// Identity, zero object, additivity and composition on sampled scalars.
Check check_fsystem(const FSystem& d, unsigned seed);
/// Exactness of the sequence ⊕ D(R/(J:s)) -> D(R/J) -> D(R/I) -> 0 (covariant) or its dual (contravariant)
/// for level pairs J ⊆ I and s over generator products of I.
Check check_exactness(const FSystem& d);

/// PL(D) = lim D(R/I_n) with the action r·e read off D(r).
ContraTrunc projective_limit(const FSystem& d);
/// IL(M) = colim M(R/I_n), a right module.
Module inductive_limit(const FSystem& m);

struct RoundtripReport {
  Check exactness;
  Check functoriality;
  Check roundtrip;
  Check complete;   // λ: C -> PL(CT(C)) is surjective
  Check separated;  // ∩ I⋆C = 0 at the truncation
  Check torsion_image;  // image of IL(Dh(N)) -> N is the part killed by the deepest level
};

/// CT(PL(D)) ≅ D level-wise for a covariant system; throws VarianceMismatch.
RoundtripReport fsystem_roundtrip(const FSystem& d, unsigned seed = 0);
/// C against PL(CT(C)): completeness, separatedness and the level isomorphisms.
RoundtripReport contramodule_roundtrip(const ContraTrunc& c, unsigned seed = 0);
/// IL(Dh(N)) against N: the natural map is injective with image the elements killed by some level.
RoundtripReport discrete_roundtrip(const TruncatedTopRing& r, const Module& n, unsigned seed = 0);

struct DualEmbedding {
  ContraTrunc target;       // Hom_ℤ(N, ℚ/ℤ)
  Module discrete;          // N = ⊕ R/I_n, one copy per level and character
  Matrix embedding;         // C -> target
  ContraTrunc second;       // Hom_ℤ(N', ℚ/ℤ)
  Matrix cokernel_map;      // target -> second, with kernel the image of C
  Check injective;
  Check quotient_separated;
  Check kernel_presentation;
};

/// Embedding of a finite contramodule into a dual of a discrete module, and C as a kernel of duals; throws FiniteOnly.
DualEmbedding dual_embedding(const ContraTrunc& c);

}  // namespace gabriel
