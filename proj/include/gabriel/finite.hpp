#pragma once

#include "gabriel/module.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace gabriel {

/// A finite module over a finite ring stored as explicit operation tables.
struct FiniteModule {
  AbelianGroup group;
  std::vector<Vec> elements;               // canonical coordinates, index = mixed-radix position
  std::vector<std::vector<int>> add;       // add[x][y]
  std::vector<int> neg;
  std::vector<std::vector<int>> act;       // act[r][x] for ring elements r in enumeration order
  std::vector<int> generators;             // indices of the group generators
  std::size_t size() const { return elements.size(); }
  int index(const Vec& v) const;
};

FiniteModule tabulate(const Module& m);

/// Map between finite modules as an image table (index -> index).
using MapTable = std::vector<int>;

/// Extends an assignment on the group generators to a group homomorphism; nullopt if inconsistent.
std::optional<MapTable> extend_additive(const FiniteModule& a, const FiniteModule& b, const std::vector<int>& images);
bool is_linear(const FiniteModule& a, const FiniteModule& b, const MapTable& f);
/// All module homomorphisms a -> b by exhaustive search over generator images.
std::vector<MapTable> all_module_maps(const FiniteModule& a, const FiniteModule& b);

/// Isomorphism type of a finite abelian group recorded as #{x : m·x = 0} for each m dividing the exponent bound.
struct TorsionCounts {
  Integer order;
  std::map<Integer, Integer> killed;
  friend bool operator==(const TorsionCounts& a, const TorsionCounts& b) = default;
};
TorsionCounts torsion_counts(const AbelianGroup& g, const Integer& exponent_bound);

/// Ext¹(M, N) classified by extensions: factor-set modules E_φ for φ ∈ Hom(K, N) over a free cover
/// F -> M with kernel K, and classes identified by an explicit splitting search.
struct ExtensionCensus {
  std::size_t cocycles = 0;   // |Hom_R(K, N)|
  std::size_t split = 0;      // how many E_φ split
  TorsionCounts classes;
};
ExtensionCensus ext1_by_extensions(const Module& m, const Module& n);

/// All submodules of a finite module, as sorted index sets.
std::vector<std::vector<int>> all_submodules(const FiniteModule& m);

}  // namespace gabriel
