#include "gabriel/finite.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gabriel {

int FiniteModule::index(const Vec& v) const { return static_cast<int>(group.index_of(group.reduce(v))); }

FiniteModule tabulate(const Module& m) {
  if (!m.finite() || !m.algebra()->finite()) fail(ErrorKind::FiniteOnly, "tables need a finite module over a finite ring");
  FiniteModule t;
  t.group = m.group();
  t.elements = m.group().elements();
  const std::size_t n = t.elements.size();
  t.add.assign(n, std::vector<int>(n));
  t.neg.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      int s = t.index(t.elements[x] + t.elements[y]);
      t.add[x][y] = s;
      t.add[y][x] = s;
    }
    t.neg[x] = t.index(Integer(-1) * t.elements[x]);
  }
  for (const auto& r : m.algebra()->group.elements()) {
    std::vector<int> row(n);
    if (m.ngens()) {
      Matrix a = m.action(r);
      for (std::size_t x = 0; x < n; ++x) row[x] = t.index(t.elements[x] * a);
    }
    t.act.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m.ngens(); ++i) t.generators.push_back(t.index(m.group().unit(i)));
  return t;
}

namespace {

// Submodule generated by the given elements, as a membership mask.
std::vector<char> closure(const FiniteModule& m, const std::vector<int>& seeds) {
  std::vector<char> in(m.size(), 0);
  std::deque<int> queue{0};
  in[0] = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    auto visit = [&](int y) {
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    };
    for (int s : seeds) visit(m.add[x][s]);
    for (const auto& row : m.act) visit(row[x]);
  }
  return in;
}

std::vector<int> module_generators(const FiniteModule& m) {
  std::vector<int> gens;
  std::vector<char> in = closure(m, gens);
  for (int x : m.generators) {
    if (in[x]) continue;
    gens.push_back(x);
    in = closure(m, gens);
  }
  return gens;
}

// Extends c(gens) = images along c(x+g) = c(x) + c(g) + tw_add(x,g) and c(x·r) = c(x)·r + tw_act(r,x),
// then verifies both rules on all pairs.
template <class AddTwist, class ActTwist>
std::optional<MapTable> solve_twisted(const FiniteModule& a, const FiniteModule& b, const std::vector<int>& gens,
                                      const std::vector<int>& images, AddTwist tw_add, ActTwist tw_act) {
  const std::size_t n = a.size();
  MapTable c(n, -1);
  c[0] = 0;
  std::deque<int> queue{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (c[gens[i]] >= 0 && c[gens[i]] != images[i]) return std::nullopt;
    if (c[gens[i]] < 0) queue.push_back(gens[i]);
    c[gens[i]] = images[i];
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = a.add[x][gens[i]];
      if (c[y] < 0) {
        c[y] = b.add[b.add[c[x]][images[i]]][tw_add(x, gens[i])];
        queue.push_back(y);
      }
    }
    for (std::size_t r = 0; r < a.act.size(); ++r) {
      int y = a.act[r][x];
      if (c[y] < 0) {
        c[y] = b.add[b.act[r][c[x]]][tw_act(r, x)];
        queue.push_back(y);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (c[x] < 0) return std::nullopt;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y)
      if (c[a.add[x][y]] != b.add[b.add[c[x]][c[y]]][tw_add(static_cast<int>(x), static_cast<int>(y))]) return std::nullopt;
  for (std::size_t r = 0; r < a.act.size(); ++r)
    for (std::size_t x = 0; x < n; ++x)
      if (c[a.act[r][x]] != b.add[b.act[r][c[x]]][tw_act(r, static_cast<int>(x))]) return std::nullopt;
  return c;
}

// Calls visit on every assignment of target elements to k slots; stops when visit returns true.
template <class F>
bool for_each_assignment(std::size_t k, std::size_t range, F visit) {
  std::vector<int> cur(k, 0);
  while (true) {
    if (visit(cur)) return true;
    std::size_t i = 0;
    while (i < k) {
      if (static_cast<std::size_t>(++cur[i]) < range) break;
      cur[i] = 0;
      ++i;
    }
    if (i == k) return false;
  }
}

const auto no_add_twist = [](int, int) { return 0; };
const auto no_act_twist = [](std::size_t, int) { return 0; };

}  // namespace

std::optional<MapTable> extend_additive(const FiniteModule& a, const FiniteModule& b, const std::vector<int>& images) {
  if (images.size() != a.generators.size()) fail(ErrorKind::InvalidArgument, "one image per generator required");
  FiniteModule plain = a;
  plain.act.clear();
  return solve_twisted(plain, b, a.generators, images, no_add_twist, no_act_twist);
}

bool is_linear(const FiniteModule& a, const FiniteModule& b, const MapTable& f) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x; y < a.size(); ++y)
      if (f[a.add[x][y]] != b.add[f[x]][f[y]]) return false;
  for (std::size_t r = 0; r < a.act.size(); ++r)
    for (std::size_t x = 0; x < a.size(); ++x)
      if (f[a.act[r][x]] != b.act[r][f[x]]) return false;
  return true;
}

std::vector<MapTable> all_module_maps(const FiniteModule& a, const FiniteModule& b) {
  std::vector<int> gens = module_generators(a);
  std::vector<MapTable> out;
  for_each_assignment(gens.size(), b.size(), [&](const std::vector<int>& images) {
    if (auto f = solve_twisted(a, b, gens, images, no_add_twist, no_act_twist)) out.push_back(std::move(*f));
    return false;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TorsionCounts torsion_counts(const AbelianGroup& g, const Integer& exponent_bound) {
  TorsionCounts t;
  t.order = g.order();
  for (Integer m = 1; m <= exponent_bound; ++m)
    if (exponent_bound % m == 0) t.killed[m] = g.count_killed_by(m);
  return t;
}

ExtensionCensus ext1_by_extensions(const Module& m, const Module& n) {
  if (m.algebra() != n.algebra() || m.side() != n.side()) fail(ErrorKind::HandleMismatch, "modules over different rings");
  const AlgebraPtr& alg = m.algebra();
  FiniteModule mt = tabulate(m);
  FiniteModule nt = tabulate(n);
  const std::size_t k = m.ngens();
  Module f = Module::free(alg, m.side(), k);
  Matrix eps = free_map_matrix(alg, m.side(), k, m, Matrix::identity(k));
  KernelResult kr = module_kernel(f, m, eps);
  FiniteModule kt = tabulate(kr.module);
  std::map<Vec, int> k_index;
  for (std::size_t i = 0; i < kt.size(); ++i) {
    Vec v = kr.module.ngens() ? f.group().reduce(kt.elements[i] * kr.inclusion) : f.group().zero();
    k_index[v] = static_cast<int>(i);
  }
  auto lookup = [&](const Vec& v) {
    auto it = k_index.find(f.group().reduce(v));
    if (it == k_index.end()) fail(ErrorKind::InvalidArgument, "factor set leaves the kernel");
    return it->second;
  };
  // Set-theoretic section M -> F and the resulting factor sets with values in K.
  const std::size_t dim = alg->dim();
  std::vector<Vec> sigma(mt.size());
  for (std::size_t x = 0; x < mt.size(); ++x) {
    Vec s(k * dim);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < dim; ++l) s[j * dim + l] = mt.elements[x][j] * alg->one[l];
    sigma[x] = f.group().reduce(s);
  }
  std::vector<std::vector<int>> k_add(mt.size(), std::vector<int>(mt.size()));
  for (std::size_t x = 0; x < mt.size(); ++x)
    for (std::size_t y = 0; y < mt.size(); ++y) k_add[x][y] = lookup(sigma[x] + sigma[y] - sigma[mt.add[x][y]]);
  const auto ring = alg->group.elements();
  std::vector<std::vector<int>> k_act(ring.size(), std::vector<int>(mt.size()));
  for (std::size_t r = 0; r < ring.size(); ++r)
    for (std::size_t x = 0; x < mt.size(); ++x) k_act[r][x] = lookup(f.act(sigma[x], ring[r]) - sigma[mt.act[r][x]]);

  std::vector<MapTable> cocycles = all_module_maps(kt, nt);
  std::vector<int> mgens = module_generators(mt);
  std::map<MapTable, std::size_t> position;
  for (std::size_t i = 0; i < cocycles.size(); ++i) position.emplace(cocycles[i], i);
  auto plus = [&](const MapTable& a, const MapTable& b) {
    MapTable c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = nt.add[a[i]][b[i]];
    return c;
  };
  auto splits = [&](const MapTable& phi) {
    auto tw_add = [&](int x, int y) { return phi[k_add[x][y]]; };
    auto tw_act = [&](std::size_t r, int x) { return phi[k_act[r][x]]; };
    return for_each_assignment(mgens.size(), nt.size(), [&](const std::vector<int>& images) {
      return solve_twisted(mt, nt, mgens, images, tw_add, tw_act).has_value();
    });
  };
  // Split factor sets form a subgroup S containing 0, so one search settles a whole coset of the part of S found so far.
  enum : char { Unknown, Split, NonSplit };
  std::vector<char> status(cocycles.size(), Unknown);
  const std::size_t zero = position.at(MapTable(kt.size(), nt.index(nt.group.zero())));
  status[zero] = Split;
  std::vector<std::size_t> subgroup{zero};
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    if (status[i] != Unknown) continue;
    if (splits(cocycles[i])) {
      std::vector<std::size_t> added;
      for (MapTable m = cocycles[i]; status[position.at(m)] != Split; m = plus(m, cocycles[i]))
        for (std::size_t t : subgroup) {
          const std::size_t u = position.at(plus(m, cocycles[t]));
          status[u] = Split;
          added.push_back(u);
        }
      subgroup.insert(subgroup.end(), added.begin(), added.end());
    } else {
      for (std::size_t t : subgroup) status[position.at(plus(cocycles[i], cocycles[t]))] = NonSplit;
    }
  }
  std::set<MapTable> split;
  for (std::size_t i = 0; i < cocycles.size(); ++i)
    if (status[i] == Split) split.insert(cocycles[i]);
  ExtensionCensus census;
  census.cocycles = cocycles.size();
  census.split = split.size();
  const Integer e = n.finite() && n.ngens() ? n.group().exponent() : Integer(1);
  census.classes.order = Integer(census.cocycles / census.split);
  for (Integer d = 1; d <= e; ++d) {
    if (e % d != 0) continue;
    std::size_t hits = 0;
    const int times = static_cast<int>(to_i64(d));
    for (const auto& phi : cocycles) {
      MapTable scaled(phi.size(), 0);
      for (std::size_t i = 0; i < phi.size(); ++i)
        for (int t = 0; t < times; ++t) scaled[i] = nt.add[scaled[i]][phi[i]];
      if (split.count(scaled)) ++hits;
    }
    census.classes.killed[d] = Integer(hits / census.split);
  }
  return census;
}

std::vector<std::vector<int>> all_submodules(const FiniteModule& m) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> order;
  auto as_set = [](const std::vector<char>& mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) s.push_back(static_cast<int>(i));
    return s;
  };
  std::deque<std::vector<int>> queue;
  auto zero = as_set(closure(m, {}));
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    order.push_back(s);
    std::vector<char> mask(m.size(), 0);
    for (int x : s) mask[x] = 1;
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (mask[x]) continue;
      std::vector<int> seeds = s;
      seeds.push_back(static_cast<int>(x));
      auto t = as_set(closure(m, seeds));
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return order;
}

}  // namespace gabriel
