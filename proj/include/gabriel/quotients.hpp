#pragma once

#include "gabriel/module.hpp"
#include "gabriel/topology.hpp"
#include "gabriel/tower.hpp"
#include "gabriel/verdict.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gabriel {

/// Generators of {x : x·I = 0} in a right module.
Matrix annihilated_by(const Module& m, const Ideal& i);
/// The least ideal of the filter on a finite ring; throws InvalidArgument when the intersection is not in the filter.
Ideal least_ideal(const TopologyBase& b);

struct TorsionReport {
  SubmoduleResult submodule;
  QuotientModule quotient;
  /// (generator of the torsion submodule, base ideal annihilating it)
  std::vector<std::pair<std::string, std::string>> annihilators;
};

/// Elements of a right module killed by some base ideal. Over ℤ with a chain base the chain is
/// extended past the exponents of the torsion invariants, so the result is exact.
TorsionReport torsion_submodule(const Module& m, const TopologyBase& b);

/// Truncated direct system Hom(I_1, N) -> Hom(I_2, N) -> ... along restriction maps.
struct Sheafification {
  std::vector<Ideal> levels;
  Tower system;
  std::optional<Module> stabilized;  // colimit when the system stabilizes within the depth
  bool vanishes = false;             // every transition map is zero, so the colimit is 0
  std::string description;
};

/// Finite rings use the least ideal of the filter; infinite rings need a chain base (ChainRequired).
Sheafification sheafify(const Module& n, const TopologyBase& b, std::size_t depth);

enum class CarrierKind { LocalizedPID, FiniteRing, LatticeLocalization };
std::string to_string(CarrierKind k);

/// Element of a ring of quotients: num/den with num in ring coordinates for fraction carriers,
/// or carrier coordinates with den = 1 for finite carriers.
struct QElement {
  Vec num;
  Integer den = 1;
  friend bool operator==(const QElement& a, const QElement& b) = default;
};

/// U = R_G with the unit map u: R -> U.
struct QuotientRing {
  TopologyBase base;
  CarrierKind kind = CarrierKind::LocalizedPID;
  std::size_t depth = 0;
  // Fraction carriers: U is the union of L_n = Y_n / m_n with Y_n ⊆ R.
  std::vector<Integer> denominators;
  std::vector<Matrix> numerators;
  // Finite carriers: U is an explicit finite ring.
  AlgebraPtr algebra;
  Matrix unit_map;   // ring coordinates -> carrier coordinates
  Ideal torsion;     // kernel of u
  Check unit_is_homomorphism;
  Check multiplication;  // native product versus the fibered-product construction

  bool fractional() const { return kind != CarrierKind::FiniteRing; }
  QElement one() const;
  QElement unit(const Element& r) const;
  QElement add(const QElement& a, const QElement& b) const;
  QElement sub(const QElement& a, const QElement& b) const;
  QElement mul(const QElement& a, const QElement& b) const;
  QElement scale(const QElement& a, const Integer& k) const;
  /// The element lies in u(R).
  bool in_image(const QElement& x) const;
  /// Smallest level n <= depth with x ∈ L_n (fraction carriers).
  std::optional<std::size_t> level_of(const QElement& x) const;
  /// Generators sampled by the cross-checks: ℤ-bases of the levels, or the carrier basis.
  std::vector<QElement> generators() const;
  std::string to_string(const QElement& x) const;
  std::string to_string() const;
};

/// U = (R/t(R))_(G): fractions for ℤ and quadratic orders (chain bases only), an explicit finite ring otherwise.
QuotientRing ring_of_quotients(const TopologyBase& b, std::size_t depth, unsigned seed = 0);
/// The carrier U = R with u = identity, used as a negative control.
QuotientRing identity_quotient(const TopologyBase& b);

/// L_n = {x : x·I_n ⊆ R} as numerator lattice and denominator, for a level I_n of a domain.
std::pair<Matrix, Integer> inverse_level(const Ideal& i);

/// Σ s_k v_k = 1 with s_k ∈ I and v_k ∈ U.
struct Certificate {
  Ideal ideal;
  std::vector<Element> s;
  std::vector<QElement> v;
};

struct PerfectReport {
  Check verdict;
  std::vector<Certificate> certificates;
};

/// For every materialized base ideal I, a certificate that I·U = U.
PerfectReport check_perfect(const TopologyBase& b, const QuotientRing& u);
/// A certificate for a single ideal, if one exists within the carrier's depth.
std::optional<Certificate> find_certificate(const Ideal& i, const QuotientRing& u);
std::string to_string(const Certificate& c, const QuotientRing& u);

struct AnnihilatorReport {
  Ideal annihilator;  // {r : (v_k + R)·r = 0 for all k}
  Check containment;  // annihilator ⊆ I
};

/// Joint annihilator of the cosets v_k + R in U/R; throws BadCertificate for an invalid certificate.
AnnihilatorReport annihilator_preimage(const Certificate& c, const QuotientRing& u);

/// The multiplication map U ⊗_R U -> U is bijective: exactly for finite carriers,
/// as L_n ⊗ L_n ≅ L_n·L_n at each level for fraction carriers.
Check multiplication_bijective(const QuotientRing& u);

/// U as a module over R on the given side through u (finite carriers, or the level L_n for fraction carriers).
Module carrier_module(const QuotientRing& u, Side side, std::size_t level = 0);
/// Coordinates of x in carrier_module(u, side, level).
Vec carrier_coords(const QuotientRing& u, const QElement& x, std::size_t level = 0);

}  // namespace gabriel
