#include "gabriel/topology.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <set>

namespace gabriel {

std::string to_string(BaseKind k) {
  switch (k) {
    case BaseKind::FiniteSet: return "finite";
    case BaseKind::Chain: return "chain";
    case BaseKind::FullEnumeration: return "enumeration";
  }
  return "?";
}

namespace {

void add_unique(std::vector<Ideal>& out, const Ideal& i) {
  if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
}

std::vector<Ideal> powers(const Ideal& g, std::size_t n) {
  std::vector<Ideal> out;
  Ideal cur = g;
  for (std::size_t k = 1; k <= n; ++k) {
    out.push_back(cur);
    cur = ideal_product(cur, g);
  }
  return out;
}

bool in_filter(const std::vector<Ideal>& members, const Ideal& j) {
  return std::any_of(members.begin(), members.end(), [&](const Ideal& m) { return j.contains(m); });
}

std::vector<Element> generators_or_zero(const Ideal& i) {
  auto g = i.canonical_generators();
  if (g.empty()) g.push_back(Element::zero(i.ring()));
  return g;
}

bool beyond_cap(const TopologyBase& b, const Ideal& j) {
  if (!b.norm_cap) return false;
  auto n = j.norm();
  return !n || *n > *b.norm_cap;
}

std::string bound_text(const TopologyBase& b, std::size_t sample, std::size_t skipped) {
  std::string out = b.ring.finite() ? "exhaustive" : "depth " + std::to_string(b.depth);
  if (sample) out += ", " + std::to_string(sample) + " sample elements";
  if (b.norm_cap) out += ", norm <= " + gabriel::to_string(*b.norm_cap);
  if (skipped) out += ", " + std::to_string(skipped) + " beyond the norm cap";
  return out;
}

std::vector<Element> ring_generators(const Ring& r) {
  std::vector<Element> out{Element::one(r)};
  switch (r.cls()) {
    case RingClass::QuadraticOrder: out.push_back(Element(r, Vec{0, 1})); break;
    case RingClass::UnivariatePoly: out.push_back(Element(r, Poly{Rational(0), Rational(1)})); break;
    default: break;
  }
  return out;
}

}  // namespace

std::vector<Ideal> TopologyBase::members() const {
  std::vector<Ideal> out = ideals;
  for (const auto& r : rules)
    for (const auto& p : powers(r, 2 * std::max<std::size_t>(depth, 1))) add_unique(out, p);
  return out;
}

bool TopologyBase::contains(const Ideal& j) const { return in_filter(members(), j); }

std::vector<Ideal> TopologyBase::chain(std::size_t n) const {
  if (kind != BaseKind::Chain) fail(ErrorKind::ChainRequired, "base is not a chain");
  if (!rules.empty()) return powers(rules.front(), n);
  std::vector<Ideal> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(ideals[std::min(k, ideals.size() - 1)]);
  return out;
}

std::string TopologyBase::to_string() const {
  std::string out = gabriel::to_string(kind) + " base over " + ring.to_string() + ":";
  for (const auto& i : ideals) out += " " + i.to_string();
  return out;
}

TopologyBase finite_base(const std::vector<Ideal>& ideals) {
  if (ideals.empty()) fail(ErrorKind::EmptyGenerators, "a base needs at least one ideal");
  TopologyBase b;
  b.ring = ideals.front().ring();
  b.kind = BaseKind::FiniteSet;
  for (const auto& i : ideals) {
    if (!(i.ring() == b.ring)) fail(ErrorKind::HandleMismatch, "base ideals over different rings");
    add_unique(b.ideals, i);
  }
  b.depth = b.ideals.size();
  return b;
}

TopologyBase chain_base(const Ideal& generator, std::size_t depth) {
  if (depth == 0) fail(ErrorKind::MalformedChain, "chain depth must be positive");
  TopologyBase b;
  b.ring = generator.ring();
  b.kind = BaseKind::Chain;
  b.rules = {generator};
  b.ideals = powers(generator, depth);
  b.depth = depth;
  return b;
}

TopologyBase chain_of(const std::vector<Ideal>& levels) {
  if (levels.empty()) fail(ErrorKind::MalformedChain, "empty chain");
  for (std::size_t n = 0; n + 1 < levels.size(); ++n)
    if (!levels[n].contains(levels[n + 1]))
      fail(ErrorKind::MalformedChain, "level " + std::to_string(n + 2) + " " + levels[n + 1].to_string() +
                                          " is not contained in " + levels[n].to_string());
  TopologyBase b;
  b.ring = levels.front().ring();
  b.kind = BaseKind::Chain;
  b.ideals = levels;
  b.depth = levels.size();
  return b;
}

TopologyBase full_enumeration(const std::vector<Ideal>& seed) {
  if (seed.empty()) fail(ErrorKind::EmptyGenerators, "enumeration needs a seed ideal");
  const Ring& r = seed.front().ring();
  if (!r.finite()) fail(ErrorKind::FiniteOnly, "full enumeration needs a finite ring");
  TopologyBase b;
  b.ring = r;
  b.kind = BaseKind::FullEnumeration;
  for (const auto& i : all_right_ideals(r))
    if (in_filter(seed, i)) b.ideals.push_back(i);
  b.depth = b.ideals.size();
  return b;
}

std::vector<Element> default_sample(const TopologyBase& b) {
  if (b.ring.finite()) return enumerate(b.ring);
  std::set<Element> s{Element::zero(b.ring)};
  std::vector<Element> base = ring_generators(b.ring);
  for (const auto& i : b.ideals)
    for (const auto& g : i.canonical_generators()) base.push_back(g);
  for (const auto& x : base) {
    s.insert(x);
    for (const auto& y : base) s.insert(x * y);
  }
  return {s.begin(), s.end()};
}

TopologyBase check_axioms(TopologyBase b) {
  auto sample = default_sample(b);
  return check_axioms(std::move(b), sample);
}

TopologyBase check_axioms(TopologyBase b, const std::vector<Element>& sample) {
  if (b.kind == BaseKind::Chain) {
    if (b.depth < 2 && b.rules.size() == 1) fail(ErrorKind::MalformedChain, "chain checks need depth at least 2");
    auto levels = b.chain(b.depth);
    for (std::size_t n = 0; n + 1 < levels.size(); ++n)
      if (!levels[n].contains(levels[n + 1])) fail(ErrorKind::MalformedChain, "chain is not descending at level " + std::to_string(n + 2));
  }
  const auto members = b.members();
  b.flags.clear();
  b.flags["T0"] = b.ideals.empty() ? Check::failed({"empty base"}) : Check::verified("base nonempty");
  b.flags["T1"] = Check::verified("by construction");

  std::size_t skipped = 0;
  Check t2;
  for (std::size_t a = 0; a < b.ideals.size() && t2.status != Status::Failed; ++a)
    for (std::size_t c = a + 1; c < b.ideals.size(); ++c) {
      Ideal w = ideal_intersect(b.ideals[a], b.ideals[c]);
      if (in_filter(members, w)) continue;
      if (beyond_cap(b, w)) {
        ++skipped;
        continue;
      }
      t2 = Check::failed({b.ideals[a].to_string() + " ∩ " + b.ideals[c].to_string() + " = " + w.to_string() +
                          " contains no base ideal"});
      break;
    }
  if (t2.status != Status::Failed) t2 = Check::verified(bound_text(b, 0, skipped));
  b.flags["T2"] = t2;

  Check t3;
  for (const auto& i : b.ideals) {
    for (const auto& s : sample) {
      Ideal c = colon_ideal(i, s);
      if (in_filter(members, c)) continue;
      t3 = Check::failed({"(" + i.to_string() + " : " + s.to_string() + ") = " + c.to_string() + " contains no base ideal"});
      break;
    }
    if (t3.status == Status::Failed) break;
  }
  if (t3.status != Status::Failed) t3 = Check::verified(bound_text(b, sample.size(), 0));
  b.flags["T3"] = t3;

  skipped = 0;
  Check t4p;
  for (const auto& j : b.ideals) {
    auto gens = generators_or_zero(j);
    for (const auto& k : b.ideals) {
      Ideal p = translate_product(gens, k);
      if (in_filter(members, p)) continue;
      if (beyond_cap(b, p)) {
        ++skipped;
        continue;
      }
      t4p = Check::failed({"generators of " + j.to_string() + " times " + k.to_string() + " give " + p.to_string() +
                           ", which contains no base ideal"});
      break;
    }
    if (t4p.status == Status::Failed) break;
  }
  if (t4p.status != Status::Failed) t4p = Check::verified(bound_text(b, 0, skipped));
  b.flags["T4'"] = t4p;

  if (b.ring.finite()) {
    Check t4;
    const auto elements = enumerate(b.ring);
    for (const auto& i : all_right_ideals(b.ring)) {
      if (in_filter(members, i)) continue;
      for (const auto& j : members) {
        bool all = std::all_of(elements.begin(), elements.end(), [&](const Element& s) {
          return !j.contains(s) || in_filter(members, colon_ideal(i, s));
        });
        if (all) {
          t4 = Check::failed({i.to_string() + " is outside the filter although (I:s) lies in it for every s in " + j.to_string()});
          break;
        }
      }
      if (t4.status == Status::Failed) break;
    }
    if (t4.status != Status::Failed) t4 = Check::verified("exhaustive");
    b.flags["T4"] = t4;
  }
  return b;
}

WitnessProvider self_witness() {
  return [](const Ideal& i) { return std::vector<Ideal>{i}; };
}

WitnessProvider two_sided_witness(const TopologyBase& b) {
  auto members = b.members();
  return [members](const Ideal& i) {
    for (const auto& j : members)
      if (i.contains(j) && j.is_two_sided()) return std::vector<Ideal>{j};
    return std::vector<Ideal>{};
  };
}

WitnessProvider unit_witness() {
  return [](const Ideal& i) { return std::vector<Ideal>{Ideal::unit(i.ring())}; };
}

Check check_t_omega(const TopologyBase& b, const WitnessProvider& w, const std::vector<Element>& sample) {
  for (const auto& i : b.ideals) {
    auto family = w(i);
    for (const auto& s : sample) {
      bool found = std::any_of(family.begin(), family.end(), [&](const Ideal& j) { return i.contains(translate_product({s}, j)); });
      if (!found) return Check::failed({"I = " + i.to_string(), "s = " + s.to_string(), "no J in F_I with sJ ⊆ I"});
    }
  }
  return Check::verified(bound_text(b, sample.size(), 0));
}

Saturation saturate(const std::vector<Ideal>& seed, const WitnessProvider& w, const SaturationBudget& budget) {
  if (seed.empty()) fail(ErrorKind::EmptyGenerators, "saturation needs a seed");
  TopologyBase probe;
  probe.norm_cap = budget.max_norm;
  std::vector<Ideal> cur;
  for (const auto& i : seed) {
    if (!(i.ring() == seed.front().ring())) fail(ErrorKind::HandleMismatch, "seed ideals over different rings");
    add_unique(cur, i);
  }
  auto adjoin = [&](std::vector<Ideal>& out, const Ideal& i) {
    if (!beyond_cap(probe, i)) add_unique(out, i);
  };
  Saturation out;
  bool closed = false;
  for (std::size_t round = 0; round < budget.rounds && !closed; ++round) {
    std::vector<Ideal> next = cur;
    for (const auto& i : cur)
      for (const auto& j : w(i)) adjoin(next, j);
    const std::vector<Ideal> with_witnesses = next;
    for (const auto& j : with_witnesses) {
      auto gens = generators_or_zero(j);
      for (const auto& k : with_witnesses) adjoin(next, translate_product(gens, k));
    }
    const std::vector<Ideal> with_products = next;
    for (std::size_t a = 0; a < with_products.size(); ++a)
      for (std::size_t c = a + 1; c < with_products.size(); ++c) adjoin(next, ideal_intersect(with_products[a], with_products[c]));
    out.rounds_run = round + 1;
    closed = next.size() == cur.size();
    if (next.size() > budget.max_ideals) {
      next.resize(budget.max_ideals);
      cur = std::move(next);
      break;
    }
    cur = std::move(next);
  }
  out.partial = !closed;
  std::sort(cur.begin(), cur.end());
  TopologyBase base = finite_base(cur);
  base.norm_cap = budget.max_norm;
  out.base = check_axioms(std::move(base));
  return out;
}

bool filter_contained(const TopologyBase& a, const TopologyBase& b) {
  auto members = b.members();
  return std::all_of(a.ideals.begin(), a.ideals.end(), [&](const Ideal& i) { return in_filter(members, i); });
}

bool same_filter(const TopologyBase& a, const TopologyBase& b) { return filter_contained(a, b) && filter_contained(b, a); }

TopologyFamily make_family(std::vector<TopologyBase> members) {
  if (members.empty()) fail(ErrorKind::InvalidArgument, "empty topology family");
  TopologyFamily f;
  const std::size_t n = members.size();
  f.order.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.order[a][b] = a == b || filter_contained(members[a], members[b]);
  f.members = std::move(members);
  return f;
}

TopologyBase union_topologies(const TopologyFamily& f) {
  const std::size_t n = f.members.size();
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty topology family");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (std::size_t c = 0; c < n && !bounded; ++c) bounded = f.order[a][c] && f.order[b][c];
      if (!bounded) fail(ErrorKind::NotDirected, "members " + std::to_string(a) + " and " + std::to_string(b) + " have no upper bound");
    }
  if (n == 1) return check_axioms(f.members.front());
  TopologyBase u;
  u.ring = f.members.front().ring;
  u.kind = BaseKind::FiniteSet;
  for (const auto& m : f.members) {
    if (!(m.ring == u.ring)) fail(ErrorKind::HandleMismatch, "family members over different rings");
    for (const auto& i : m.ideals) add_unique(u.ideals, i);
    for (const auto& r : m.rules) add_unique(u.rules, r);
    u.depth = std::max(u.depth, m.depth);
  }
  return check_axioms(std::move(u));
}

GeneratorCriterion t4_generator_criterion(const TopologyBase& b, const Ideal& i, const Ideal& j,
                                          const std::vector<Element>& elements_of_j) {
  auto members = b.members();
  GeneratorCriterion out;
  out.all_elements = std::all_of(elements_of_j.begin(), elements_of_j.end(), [&](const Element& s) {
    if (!j.contains(s)) fail(ErrorKind::NotInIdeal, s.to_string() + " is not in " + j.to_string());
    return in_filter(members, colon_ideal(i, s));
  });
  auto gens = j.canonical_generators();
  out.generators = std::all_of(gens.begin(), gens.end(), [&](const Element& s) { return in_filter(members, colon_ideal(i, s)); });
  return out;
}

// ---- bounded monomial evaluator ----

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out = *this;
  for (std::size_t k = 0; k < exps.size(); ++k) out.exps[k] += o.exps[k];
  return out;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t k = 0; k < exps.size(); ++k)
    if (exps[k] > o.exps[k]) return false;
  return true;
}

Monomial Monomial::pow(unsigned m) const {
  Monomial out = *this;
  for (auto& e : out.exps) e *= m;
  return out;
}

std::string Monomial::to_string() const {
  const std::size_t n = exps.size() / 2;
  std::string out;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (!exps[k]) continue;
    out += (k < n ? "x" : "y") + std::to_string(k % n + 1);
    if (exps[k] > 1) out += "^" + std::to_string(exps[k]);
  }
  return out.empty() ? "1" : out;
}

Monomial MonomialRing::x(std::size_t i) const {
  Monomial m = one();
  m.exps.at(i - 1) = 1;
  return m;
}

Monomial MonomialRing::y(std::size_t i) const {
  Monomial m = one();
  m.exps.at(n + i - 1) = 1;
  return m;
}

Monomial MonomialRing::y_prefix(std::size_t k) const {
  Monomial m = one();
  for (std::size_t i = 1; i <= k; ++i) m = m * y(i);
  return m;
}

bool MonomialIdeal::contains(const Monomial& m) const {
  return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
}

bool MonomialIdeal::contains(const Support& p) const {
  return std::all_of(p.begin(), p.end(), [&](const Monomial& m) { return contains(m); });
}

namespace {

std::string support_text(const Support& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? " + " : "") + s[k].to_string();
  return out;
}

Support times(const Monomial& m, const Support& s) {
  Support out;
  for (const auto& t : s) out.push_back(m * t);
  return out;
}

}  // namespace

CorrigendumReport regress_corrigendum(std::size_t variables, unsigned max_power) {
  if (variables < 3 || max_power < 1) fail(ErrorKind::InvalidArgument, "regression needs at least 3 variables and power bound 1");
  const MonomialRing r{variables};
  const std::size_t n = variables;
  auto j_gens = [&](std::size_t k) {
    std::vector<Monomial> g;
    for (std::size_t i = 1; i <= n; ++i) g.push_back(r.y_prefix(k) * r.x(i));
    return g;
  };
  // X belongs to G_{J_k} when a power of every generator of J_k lies in X.
  auto in_g = [&](const MonomialIdeal& x, std::size_t k) {
    for (const auto& g : j_gens(k)) {
      bool hit = false;
      for (unsigned m = 1; m <= max_power && !hit; ++m) hit = x.contains(g.pow(m));
      if (!hit) return false;
    }
    return true;
  };
  MonomialIdeal i_ideal;
  for (std::size_t i = 1; i <= n; ++i) i_ideal.gens.push_back(r.x(i) * r.y(i));
  MonomialIdeal j0{j_gens(0)};
  const std::string bound = std::to_string(n) + " variable pairs, powers <= " + std::to_string(max_power);

  CorrigendumReport rep;
  rep.variables = n;
  rep.max_power = max_power;
  rep.j0_in_h = in_g(j0, 0) ? Check::verified(bound) : Check::failed({"J_0 misses a generator power"}, bound);

  std::vector<Support> samples = {
      {r.x(1)}, {r.x(2)}, {r.x(1) * r.y(2)}, {r.x(2) * r.x(3)}, {r.x(1), r.x(2) * r.y(1)}, {r.x(1) * r.y(3), r.x(3)},
      {r.x(n - 1) * r.y(n)}, {r.x(1), r.x(2), r.x(3) * r.x(3)}};
  rep.colons_in_h = Check::verified(bound + ", " + std::to_string(samples.size()) + " sampled s");
  for (const auto& s : samples) {
    std::size_t k = 0;
    for (const auto& t : s) {
      std::size_t first = n + 1;
      for (std::size_t i = 1; i <= n; ++i)
        if (t.exps[i - 1]) {
          first = i;
          break;
        }
      if (first > n) fail(ErrorKind::NotInIdeal, support_text(s) + " is not in J_0");
      k = std::max(k, first);
    }
    // y_1⋯y_k·s ∈ I, so (I:s) ⊇ (y_1⋯y_k) ⊇ J_k and (I:s) ∈ G_{J_k}.
    bool prefix = i_ideal.contains(times(r.y_prefix(k), s));
    const auto jk = j_gens(k);
    bool gens = std::all_of(jk.begin(), jk.end(), [&](const Monomial& g) { return i_ideal.contains(times(g, s)); });
    std::string line = "s = " + support_text(s) + ": " + r.y_prefix(k).to_string() + " in (I:s), J_" + std::to_string(k) + " ⊆ (I:s)";
    rep.samples.push_back(line);
    if (!prefix || !gens) rep.colons_in_h = Check::failed({"(I:s) not shown in H for " + support_text(s)}, bound);
  }

  rep.i_not_in_h = Check::verified(bound);
  for (std::size_t k = 0; k < n; ++k) {
    Monomial g = r.y_prefix(k) * r.x(k + 1);
    for (unsigned m = 1; m <= max_power; ++m)
      if (i_ideal.contains(g.pow(m))) rep.i_not_in_h = Check::failed({"(" + g.to_string() + ")^" + std::to_string(m) + " lies in I"}, bound);
    if (in_g(i_ideal, k)) rep.i_not_in_h = Check::failed({"I lies in G_{J_" + std::to_string(k) + "}"}, bound);
  }

  if (rep.j0_in_h.ok() && rep.colons_in_h.ok() && rep.i_not_in_h.ok()) {
    rep.t4 = Check::failed({"I = (x_i y_i) is not in H", "J = J_0 = (x_i) is in H", "(I:s) is in H for every sampled s in J_0"}, bound);
  } else {
    rep.t4 = Check{Status::Unchecked, bound, {"the bounded facts did not reproduce"}};
  }
  return rep;
}

}  // namespace gabriel
