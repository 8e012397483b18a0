#pragma once

#include "gabriel/ideal.hpp"
#include "gabriel/verdict.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gabriel {

enum class BaseKind { FiniteSet, Chain, FullEnumeration };
std::string to_string(BaseKind k);

/// Base of a right linear topology. The filter consists of the right ideals containing a base
/// ideal; the base is the materialized ideals plus all powers of the chain rules.
struct TopologyBase {
  Ring ring = Ring::integers();
  BaseKind kind = BaseKind::FiniteSet;
  std::vector<Ideal> ideals;
  std::vector<Ideal> rules;  // generators whose powers belong to the base
  std::size_t depth = 0;
  /// Ideals of larger norm are outside the checked range.
  std::optional<Integer> norm_cap;
  /// Verdicts keyed by axiom name: T0, T1, T2, T3, T4', and T4 for finite rings.
  std::map<std::string, Check> flags;

  /// Base ideals available to membership tests: the materialized ideals and rule powers up to twice the depth.
  std::vector<Ideal> members() const;
  /// J lies in the generated filter (up to the bounds above).
  bool contains(const Ideal& j) const;
  /// Levels I_1 ⊇ I_2 ⊇ ... of a chain base.
  std::vector<Ideal> chain(std::size_t depth) const;
  std::string to_string() const;
};

TopologyBase finite_base(const std::vector<Ideal>& ideals);
/// Chain of powers I, I², …, materialized to the given depth.
TopologyBase chain_base(const Ideal& generator, std::size_t depth);
/// Explicit chain; throws MalformedChain unless each level contains the next.
TopologyBase chain_of(const std::vector<Ideal>& levels);
/// All right ideals of a finite ring containing some seed ideal.
TopologyBase full_enumeration(const std::vector<Ideal>& seed);

/// Ring generators, base generators, their pairwise products, 0 and 1; every element for finite rings.
std::vector<Element> default_sample(const TopologyBase& b);

/// Fills the axiom flags; throws MalformedChain for a non-descending chain.
TopologyBase check_axioms(TopologyBase b, const std::vector<Element>& sample);
TopologyBase check_axioms(TopologyBase b);

/// Assigns to a base ideal I a family F_I of ideals; s·J ⊆ I is required for some J ∈ F_I.
using WitnessProvider = std::function<std::vector<Ideal>(const Ideal&)>;
/// F_I = {I}.
WitnessProvider self_witness();
/// F_I = {a two-sided base ideal inside I}.
WitnessProvider two_sided_witness(const TopologyBase& b);
/// F_I = {R}; fails whenever I is proper.
WitnessProvider unit_witness();

Check check_t_omega(const TopologyBase& b, const WitnessProvider& w, const std::vector<Element>& sample);

struct SaturationBudget {
  std::size_t rounds = 3;
  std::size_t max_ideals = 256;
  std::optional<Integer> max_norm;
};

struct Saturation {
  TopologyBase base;
  bool partial = false;  // the budget ran out before the closure stabilized
  std::size_t rounds_run = 0;
};

/// Closure of the seed under witness families, translate products and intersections.
Saturation saturate(const std::vector<Ideal>& seed, const WitnessProvider& w, const SaturationBudget& budget);

struct TopologyFamily {
  std::vector<TopologyBase> members;
  std::vector<std::vector<bool>> order;  // order[a][b]: filter a ⊆ filter b
};

/// Filter containment at the materialized depth.
bool filter_contained(const TopologyBase& a, const TopologyBase& b);
bool same_filter(const TopologyBase& a, const TopologyBase& b);
TopologyFamily make_family(std::vector<TopologyBase> members);
/// Union of a directed family with re-checked axioms; throws NotDirected.
TopologyBase union_topologies(const TopologyFamily& f);

/// Both sides of the generator criterion: (I:s) in the filter for all listed s ∈ J versus for the generators of J.
struct GeneratorCriterion {
  bool all_elements = false;
  bool generators = false;
};
GeneratorCriterion t4_generator_criterion(const TopologyBase& b, const Ideal& i, const Ideal& j,
                                          const std::vector<Element>& elements_of_j);

/// Monomial ideals in k[x_1, …, x_n, y_1, …, y_n]; exponent vectors list x's then y's.
struct Monomial {
  std::vector<unsigned> exps;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial pow(unsigned m) const;
  std::string to_string() const;
};

struct MonomialRing {
  std::size_t n = 0;
  Monomial one() const { return {std::vector<unsigned>(2 * n, 0)}; }
  Monomial x(std::size_t i) const;  // 1-based
  Monomial y(std::size_t i) const;
  /// y_1 ⋯ y_k
  Monomial y_prefix(std::size_t k) const;
};

/// Polynomials are handled through their supports; membership in a monomial ideal is termwise.
using Support = std::vector<Monomial>;

struct MonomialIdeal {
  std::vector<Monomial> gens;
  bool contains(const Monomial& m) const;
  bool contains(const Support& p) const;
};

struct CorrigendumReport {
  std::size_t variables = 0;
  unsigned max_power = 0;
  Check j0_in_h;      // J_0 belongs to the union filter
  Check colons_in_h;  // (I:s) belongs to it for the sampled s ∈ J_0
  Check i_not_in_h;   // I = (x_i y_i) does not
  Check t4;           // consequently T4 fails with witness (I, J_0)
  std::vector<std::string> samples;
};

/// Bounded evaluation of the union H of the filters G_{J_n}, J_n = (y_1⋯y_n x_i), at the ideal I = (x_i y_i).
CorrigendumReport regress_corrigendum(std::size_t variables, unsigned max_power);

}  // namespace gabriel
