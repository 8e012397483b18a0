#pragma once

#include "gabriel/completion.hpp"
#include "gabriel/quotients.hpp"
#include "gabriel/tower.hpp"
#include "gabriel/verdict.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gabriel {

/// One level of the direct tower U/R = colim L_n/R for a fraction carrier.
struct CarrierLevel {
  Module lattice;      // L_n as a left module
  Vec one;             // 1 ∈ L_n
  QuotientModule quotient;  // L_n -> A_n = L_n/R
};

/// The two-term complex R -> U of left modules.
struct KComplex {
  QuotientRing u;
  Module ring;  // R as a free left module of rank 1
  bool injective = false;
  // Finite carriers.
  std::optional<Module> carrier;  // U as a left module
  Matrix unit;                    // R -> U
  std::optional<KernelResult> h_minus1;     // ker u
  std::optional<QuotientModule> l_zero;     // U -> U/u(R)
  // Fraction carriers.
  std::vector<CarrierLevel> levels;
  std::vector<Matrix> lattice_maps;  // L_n -> L_{n+1}
  Tower l_tower;                     // direct tower A_n -> A_{n+1}

  std::size_t depth() const { return levels.size(); }
  std::string to_string() const;
};

KComplex k_complex(const QuotientRing& u);

struct DeltaReport {
  std::string path;  // "mapping cone" or "tower"
  Tower delta;       // Δ_n; a single level for finite carriers
  std::vector<Matrix> delta_map;  // δ_n: M -> Δ_n
  std::optional<Tower> hom_tower;  // Hom(A_n, M) along restriction
  Verdict lim1 = Verdict::Zero;    // lim¹ of the Hom tower
  std::string lim1_reason;
  bool indeterminate = false;
  Check cross_check;  // agreement with Ext¹ computed by resolutions
  std::string to_string() const;
};

/// Δ_u(M) = Ext¹(K•, M) for a left module M (any side over commutative rings).
DeltaReport delta_module(const Module& m, const KComplex& k, std::size_t depth);

enum class Node { Ext0, HomU, B, Delta, Ext1U };
std::string to_string(Node n);

/// 0 -> Ext⁰(K•,B) -> Hom(U,B) -> B -> Δ_u(B) -> Ext¹(U,B) -> 0 at one level.
struct FiveTermLevel {
  std::array<AbelianGroup, 5> objects;
  std::array<Matrix, 4> maps;
  std::array<Check, 5> exact;
};

struct FiveTermData {
  std::string path;  // "mapping cone", "tower" or "carrier colimit"
  std::vector<FiveTermLevel> levels;
  std::optional<Tower> hom_u_tower;  // Hom(L_n, B) along restriction
  Verdict hom_u = Verdict::Indeterminate;
  Verdict delta = Verdict::Indeterminate;
  Verdict ext1_u = Verdict::Indeterminate;
  std::string ext1_reason;
  Check exact;     // every node at every level
  Check colimit;   // carrier path: Δ vanishes and Hom(U,B) -> B is onto in the colimit
  Check ext2;      // finite carriers: Ext²(K•,B) ≅ Ext²(U,B) through the identity on cochains
  std::string to_string() const;
};

FiveTermData five_term(const Module& b, const KComplex& k, std::size_t depth);
/// B = U for a fraction carrier, computed through B = L_N and the colimit over N; needs carrier depth 2·depth.
FiveTermData five_term_carrier(const KComplex& k, std::size_t depth);

struct BetaThetaLevel {
  Module delta;
  Module lambda;
  Matrix delta_map;   // δ: M -> Δ_n
  Matrix lambda_map;  // λ: M -> Λ_n
  Matrix beta;        // Δ_n -> Λ_n
  Matrix theta;       // Λ_n -> Δ_n
};

struct BetaTheta {
  std::vector<BetaThetaLevel> levels;
  Check beta_delta;   // β∘δ = λ
  Check theta_lambda; // θ∘λ = δ
  Check xi;           // θ∘β = id
  Check zeta;         // β∘θ = id
  Check naturality;   // β and θ commute with the transitions
  std::string to_string() const;
};

/// β solved from β∘δ = λ; θ through M -> Hom(A_n, A_n⊗M) and the connecting map of M -> L_n⊗M -> A_n⊗M.
/// Throws TorsionObstruction when M -> U⊗M is not injective.
BetaTheta beta_theta(const Module& m, const KComplex& k, const TopologyBase& b, std::size_t depth);

struct PerpReport {
  Verdict hom_u = Verdict::Indeterminate;
  Verdict ext1_u = Verdict::Indeterminate;
  std::optional<bool> member;  // empty when a tower verdict is indeterminate
  /// Finite non-injective carriers: a submodule C' with C' and C/C' killed by the least ideal.
  std::optional<std::vector<int>> extension;
  Check prediction;  // membership agrees with the existence of such an extension
  std::string to_string() const;
};

PerpReport perp_membership(const Module& c, const KComplex& k, std::size_t depth);

struct Ext2Report {
  std::optional<AbelianGroup> ext2_u;
  std::optional<AbelianGroup> ext2_k;
  Check vanish;
  std::string note;
};

Ext2Report ext2_vanish(const KComplex& k, const Module& b);

struct EndoLevel {
  Integer ring_size;
  Integer endo_size;
  Matrix sigma;  // R/I_n -> End(A_n)
};

struct EndoReport {
  std::vector<EndoLevel> levels;
  Check injective;
  Check bijective;
  Check multiplicative;  // σ(rs) = σ(r)·σ(s) in End(A_n)^op
  Check transitions;     // σ commutes with restriction End(A_{n+1}) -> End(A_n)
  Check topology;        // annihilator_preimage witnesses lie in each level
  std::vector<std::string> witnesses;
  std::string to_string() const;
};

/// σ: R/I_n -> End(A_n)^op, r ↦ (x ↦ x·r); throws FaithfulOnly when u is not injective.
EndoReport endo_compare(const KComplex& k, const TopologyBase& b, std::size_t depth);

}  // namespace gabriel
