#pragma once

#include "gabriel/module.hpp"

#include <string>
#include <vector>

namespace gabriel {

struct NamedModule {
  std::string name;
  Module module;
};

/// ℤ/n-module ℤ/d₁ ⊕ … ⊕ ℤ/d_k for divisors d_i of n.
Module cyclic_sum(const Integer& n, const std::vector<Integer>& divisors);
/// The isomorphism classes of ℤ/12-modules with at most 12 elements.
std::vector<NamedModule> z12_modules();
/// The isomorphism classes of right UT₂(𝔽₂)-modules with at most 8 elements.
std::vector<NamedModule> ut2_right_modules();
/// Their character duals: the left UT₂(𝔽₂)-modules with at most 8 elements.
std::vector<NamedModule> ut2_left_modules();

}  // namespace gabriel
