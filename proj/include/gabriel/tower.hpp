#pragma once

#include "gabriel/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gabriel {

enum class Direction { Inverse, Direct };

/// Truncated system of modules; maps[n] goes level n+1 -> n for inverse towers and n -> n+1 for direct ones.
struct Tower {
  Direction direction = Direction::Inverse;
  std::vector<Module> levels;
  std::vector<Matrix> maps;
  std::size_t depth() const { return levels.size(); }
  /// Composite map between levels (from -> to, following the tower direction).
  Matrix composite(std::size_t from, std::size_t to) const;
  void validate() const;
};

enum class Verdict { Zero, Nonzero, Indeterminate };
std::string to_string(Verdict v);

struct LimReport {
  std::optional<Module> limit;  // exact limit when determined
  Module truncation;            // deepest level, the limit at the truncation depth
  Verdict lim1 = Verdict::Indeterminate;
  std::string lim1_reason;
  /// Image chain in level 0 (orders for finite levels, indices of consecutive images otherwise).
  std::vector<std::string> witness;
  std::optional<std::size_t> stabilized_at;
  std::size_t depth = 0;
};

/// Number of consecutive agreeing levels that counts as stabilization.
inline constexpr std::size_t kStabilizationWindow = 3;

LimReport tower_limits(const Tower& t, std::size_t window = kStabilizationWindow);

}  // namespace gabriel
