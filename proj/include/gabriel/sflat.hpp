#pragma once

#include "gabriel/completion.hpp"
#include "gabriel/delta.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gabriel {

/// 0 -> V -> G -> W -> 0 with V = R^v and W = U^w over ℤ with a chain (q^n): G is the union of
/// G_m = V ⊕ ℤ^w·g_m with g_m = q·g_{m+1} - glue[m-1]·e, and g_m ↦ q^{-m} in each copy of U.
struct ExtensionDatum {
  std::size_t v_rank = 0;
  std::size_t w_rank = 0;
  std::vector<Matrix> glue;  // w × v integer matrices; missing entries are zero
};

struct GTower {
  std::vector<Module> levels;  // G_m
  std::vector<Matrix> maps;    // G_m -> G_{m+1}
  std::vector<Matrix> to_w;    // G_m -> L_m^w
  Check exact;                 // V -> G_m -> L_m^w exact and compatible with the transitions
};

GTower materialize(const ExtensionDatum& d, const KComplex& k, std::size_t depth);

/// Projectivity of a finite module: the free cover on its generators splits, Ext¹(X, kernel) = 0.
Check projective_check(const Module& x);

struct QuotientCondition {
  Ideal ideal;
  AbelianGroup quotient;  // F/HF
  Check projective;       // over R/H
};

struct StrongFlatReport {
  Check flat;
  AbelianGroup tensor;     // U⊗F (the deepest lattice for fraction carriers)
  Check tensor_projective; // condition (i)
  std::vector<QuotientCondition> quotients;  // condition (ii), one per base ideal
  std::optional<GTower> tower;
  bool strongly_flat() const;
  std::string to_string() const;
};

/// Both projectivity conditions for a flat left module; throws NotFlat or TwoSidedRequired.
StrongFlatReport strongly_flat_check(const Module& f, const KComplex& k, std::size_t depth);
/// The same for G built from an extension datum, with G/HG taken in the colimit over the tower of depth 2·depth.
StrongFlatReport strongly_flat_check(const ExtensionDatum& d, const KComplex& k, std::size_t depth);

struct WeakCotorsionReport {
  Verdict ext1 = Verdict::Indeterminate;  // Ext¹(U, C)
  std::string reason;
  FiveTermData five_term;
  bool weakly_cotorsion() const { return ext1 == Verdict::Zero; }
};

WeakCotorsionReport weakly_cotorsion_check(const Module& c, const KComplex& k, std::size_t depth);
/// C = U for a fraction carrier.
WeakCotorsionReport weakly_cotorsion_carrier(const KComplex& k, std::size_t depth);

struct FiltrationStep {
  Matrix gens;            // G^i = H_i C in top coordinates (G^0 = C)
  AbelianGroup quotient;  // G^i / G^{i+1}
  Check annihilated;      // H_{i+1} kills G^i / G^{i+1}
};

struct Filtration {
  std::vector<FiltrationStep> steps;
  Check limit;  // C/G^i matches the contramodule levels and G^depth = 0 at the truncation
  std::string to_string() const;
};

/// G^i = H_i C along the ring's chain; throws TwoSidedRequired.
Filtration two_sided_filtration(const ContraTrunc& c);

}  // namespace gabriel
