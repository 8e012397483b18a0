#include "gabriel/fixtures.hpp"

namespace gabriel {

Module cyclic_sum(const Integer& n, const std::vector<Integer>& divisors) {
  Ring r = Ring::integers_mod(n);
  std::vector<Module> parts;
  for (const auto& d : divisors) parts.push_back(cyclic_module(Ideal::principal(Element::from_int(r, d))));
  if (parts.empty()) return Module::zero(algebra_of(r), Side::Right);
  return direct_sum(parts).module;
}

std::vector<NamedModule> z12_modules() {
  const std::vector<std::vector<Integer>> shapes = {{},     {2},    {3},       {4},    {2, 2}, {6},
                                                    {2, 4}, {2, 2, 2}, {3, 3}, {12}, {2, 6}};
  std::vector<NamedModule> out;
  for (const auto& s : shapes) {
    std::string name = s.empty() ? "0" : "";
    for (std::size_t i = 0; i < s.size(); ++i) name += (i ? "+" : "") + ("Z/" + to_string(s[i]));
    out.push_back({name, cyclic_sum(12, s)});
  }
  return out;
}

std::vector<NamedModule> ut2_right_modules() {
  Ring r = Ring::upper_triangular(2);
  auto e = [&](long a, long b, long c) { return Element(r, Vec{a, b, c}); };
  // Indecomposables: e11R (length 2), e22R (simple projective), e11R/e12R (simple).
  Module a = cyclic_module(Ideal(r, {e(0, 0, 1)}));
  Module b = cyclic_module(Ideal(r, {e(1, 0, 0)}));
  Module c = cyclic_module(Ideal(r, {e(0, 0, 1), e(0, 1, 0)}));
  const std::vector<std::pair<std::string, std::vector<const Module*>>> shapes = {
      {"0", {}},          {"S2", {&b}},          {"S1", {&c}},          {"P1", {&a}},
      {"S2+S2", {&b, &b}}, {"S2+S1", {&b, &c}},   {"S1+S1", {&c, &c}},   {"P1+S2", {&a, &b}},
      {"P1+S1", {&a, &c}}, {"S2+S2+S2", {&b, &b, &b}}, {"S2+S2+S1", {&b, &b, &c}},
      {"S2+S1+S1", {&b, &c, &c}}, {"S1+S1+S1", {&c, &c, &c}}};
  std::vector<NamedModule> out;
  for (const auto& [name, parts] : shapes) {
    if (parts.empty()) {
      out.push_back({name, Module::zero(algebra_of(r), Side::Right)});
      continue;
    }
    std::vector<Module> ms;
    for (const auto* p : parts) ms.push_back(*p);
    out.push_back({name, direct_sum(ms).module});
  }
  return out;
}

std::vector<NamedModule> ut2_left_modules() {
  std::vector<NamedModule> out;
  for (const auto& m : ut2_right_modules()) out.push_back({"D(" + m.name + ")", char_dual(m.module)});
  return out;
}

}  // namespace gabriel
