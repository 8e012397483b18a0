#include "gabriel/completion.hpp"

#include "gabriel/errors.hpp"
#include "gabriel/quotients.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

namespace gabriel {

namespace {

std::string vec_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + gabriel::to_string(v[i]);
  return out + ")";
}

Vec image(const AbelianGroup& target, const Vec& x, const Matrix& f) { return target.reduce(x * f); }

Matrix map_rows(const AbelianGroup& target, const Matrix& lift, const Matrix& f) {
  Matrix out(lift.rows(), target.ngens());
  for (std::size_t r = 0; r < lift.rows(); ++r) out.set_row(r, image(target, lift.row(r), f));
  return out;
}

/// Rows spanning I·M: lattice rows of I acting on the group generators of a left module.
Matrix ideal_times(const Ideal& i, const Module& m) {
  Matrix out(0, m.ngens());
  for (std::size_t r = 0; r < i.lattice().rows(); ++r) {
    const Matrix a = m.action(i.lattice().row(r));
    for (std::size_t t = 0; t < m.ngens(); ++t) out.append_row(m.group().reduce(m.group().unit(t) * a));
  }
  return out;
}

/// Rows spanning the products s·(b_l·x) for canonical generators s of I.
Matrix generator_products(const Ideal& i, const Module& m) {
  Matrix out(0, m.ngens());
  const auto& alg = *m.algebra();
  for (const auto& s : i.canonical_generators()) {
    const Matrix a = m.action(s.coords());
    for (std::size_t t = 0; t < m.ngens(); ++t) {
      const Vec x = m.group().unit(t);
      out.append_row(m.group().reduce(x * a));
      for (std::size_t l = 0; l < alg.dim(); ++l) out.append_row(m.group().reduce(m.act(x, alg.basis(l)) * a));
    }
  }
  return out;
}

Module as_left(const Module& m) {
  if (m.side() == Side::Left) return m;
  if (!m.algebra()->commutative) fail(ErrorKind::InvalidArgument, "a left module is required");
  return m.with_side(Side::Left);
}

Module as_right(const Module& m) {
  if (m.side() == Side::Right) return m;
  if (!m.algebra()->commutative) fail(ErrorKind::InvalidArgument, "a right module is required");
  return m.with_side(Side::Right);
}

void require_two_sided(const TruncatedTopRing& r) {
  for (const auto& i : r.ideals)
    if (!i.is_two_sided()) fail(ErrorKind::TwoSidedRequired, "level " + i.to_string() + " is not two-sided");
}

Element random_element(const Ring& ring, std::mt19937& rng) {
  const auto alg = algebra_of(ring);
  std::uniform_int_distribution<int> dist(-6, 6);
  Vec v(alg->dim());
  for (auto& c : v) c = dist(rng);
  return Element(ring, alg->group.reduce(v));
}

std::vector<Element> sample_elements(const TruncatedTopRing& r, unsigned seed, std::size_t extra) {
  const auto alg = algebra_of(r.ring());
  std::vector<Element> out{Element::zero(r.ring()), Element::one(r.ring())};
  for (std::size_t l = 0; l < alg->dim(); ++l) out.emplace_back(r.ring(), alg->basis(l));
  for (const auto& i : r.ideals)
    for (const auto& g : i.canonical_generators()) out.push_back(g);
  std::mt19937 rng(seed);
  for (std::size_t k = 0; k < extra; ++k) out.push_back(random_element(r.ring(), rng));
  return out;
}

/// R/I as a right module over the ring's algebra with the quotient's coordinates.
struct RightCyclic {
  Module module;
  Quotient q;
};

RightCyclic right_cyclic(const Ideal& i) {
  const auto alg = algebra_of(i.ring());
  Quotient q = quotient(alg->group, i.lattice());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    Matrix a(q.group.ngens(), q.group.ngens());
    for (std::size_t t = 0; t < q.group.ngens(); ++t) a.set_row(t, image(q.group, alg->mul(q.lift.row(t), alg->basis(l)), q.projection));
    actions.push_back(std::move(a));
  }
  return {Module(alg, Side::Right, q.group, std::move(actions)), std::move(q)};
}

/// Cache of quotient systems K ↦ M/S(K) keyed by the lattice of K.
class QuotientCache {
 public:
  QuotientCache(Module m, std::function<Matrix(const Ideal&, const Module&)> span)
      : m_(std::move(m)), span_(std::move(span)) {}
  const QuotientModule& at(const Ideal& k) {
    const auto key = k.lattice().to_string();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, quotient_module(m_, span_(k, m_))).first;
    return it->second;
  }
  const Module& module() const { return m_; }

 private:
  Module m_;
  std::function<Matrix(const Ideal&, const Module&)> span_;
  std::map<std::string, QuotientModule> cache_;
};

FSystem quotient_system(const TruncatedTopRing& r, const Module& m, std::string name,
                        std::function<Matrix(const Ideal&, const Module&)> span) {
  auto cache = std::make_shared<QuotientCache>(as_left(m), std::move(span));
  FSystem d;
  d.variance = Variance::Covariant;
  d.ring = r;
  d.name = std::move(name);
  d.value = [cache](const Ideal& k) { return cache->at(k).module.group(); };
  d.action = [cache](const QFMorphism& f) {
    const auto& src = cache->at(f.source());
    const auto& dst = cache->at(f.target());
    const Module& m = cache->module();
    const Matrix a = m.action(f.scalar().coords());
    Matrix out(src.module.ngens(), dst.module.ngens());
    for (std::size_t t = 0; t < src.module.ngens(); ++t)
      out.set_row(t, image(dst.module.group(), m.group().reduce(src.lift.row(t) * a), dst.projection));
    return out;
  };
  return d;
}

struct LimitData {
  ContraTrunc contra;
  AbelianGroup ambient;
  Subgroup e;                        // compatible tuples inside ⊕ D(R/I_n)
  std::vector<std::size_t> offsets;  // start of component n
  std::vector<AbelianGroup> groups;
};

Matrix component(const LimitData& l, std::size_t n) {
  Matrix out(l.e.inclusion.rows(), l.groups[n].ngens());
  for (std::size_t t = 0; t < l.e.inclusion.rows(); ++t)
    for (std::size_t c = 0; c < l.groups[n].ngens(); ++c) out(t, c) = l.e.inclusion(t, l.offsets[n] + c);
  return out;
}

LimitData limit_data(const FSystem& d) {
  if (d.variance != Variance::Covariant) fail(ErrorKind::VarianceMismatch, "PL needs a covariant system");
  const auto& r = d.ring;
  const std::size_t k = r.depth();
  LimitData out;
  std::vector<Integer> moduli;
  for (std::size_t n = 0; n < k; ++n) {
    out.groups.push_back(d.value(r.ideals[n]));
    out.offsets.push_back(moduli.size());
    const auto& g = out.groups.back().moduli();
    moduli.insert(moduli.end(), g.begin(), g.end());
  }
  out.ambient = AbelianGroup(moduli);
  const AbelianGroup& ambient = out.ambient;
  std::vector<Integer> diff_moduli;
  std::vector<std::size_t> diff_offsets;
  for (std::size_t n = 0; n + 1 < k; ++n) {
    diff_offsets.push_back(diff_moduli.size());
    const auto& g = out.groups[n].moduli();
    diff_moduli.insert(diff_moduli.end(), g.begin(), g.end());
  }
  const AbelianGroup diffs(diff_moduli);
  Matrix f(ambient.ngens(), diffs.ngens());
  for (std::size_t n = 0; n + 1 < k; ++n) {
    const Matrix t = d.action(QFMorphism(r.ideals[n + 1], r.ideals[n], Element::one(r.ring())));
    for (std::size_t a = 0; a < out.groups[n + 1].ngens(); ++a)
      for (std::size_t b = 0; b < out.groups[n].ngens(); ++b) f(out.offsets[n + 1] + a, diff_offsets[n] + b) += t(a, b);
    for (std::size_t a = 0; a < out.groups[n].ngens(); ++a) f(out.offsets[n] + a, diff_offsets[n] + a) -= 1;
  }
  out.e = subgroup(ambient, kernel_gens(ambient, diffs, f));
  const auto alg = algebra_of(r.ring());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    const Element b(r.ring(), alg->basis(l));
    Matrix blocks(ambient.ngens(), ambient.ngens());
    for (std::size_t n = 0; n < k; ++n) {
      const auto m = r.level_inside(colon_ideal(r.ideals[n], b));
      if (!m) fail(ErrorKind::DepthMismatch, "(" + r.ideals[n].to_string() + " : " + b.to_string() + ") needs a deeper level");
      const std::size_t src = std::max(*m - 1, n);
      const Matrix a = d.action(QFMorphism(r.ideals[src], r.ideals[n], b));
      for (std::size_t x = 0; x < out.groups[src].ngens(); ++x)
        for (std::size_t y = 0; y < out.groups[n].ngens(); ++y) blocks(out.offsets[src] + x, out.offsets[n] + y) += a(x, y);
    }
    Matrix act(out.e.group.ngens(), out.e.group.ngens());
    for (std::size_t t = 0; t < out.e.inclusion.rows(); ++t) {
      auto c = subgroup_coords(ambient, out.e, ambient.reduce(out.e.inclusion.row(t) * blocks));
      if (!c) fail(ErrorKind::InvalidArgument, "the action does not preserve compatible tuples");
      act.set_row(t, *c);
    }
    actions.push_back(std::move(act));
  }
  Module top(alg, Side::Left, out.e.group, std::move(actions));
  out.contra = contramodule(r, top, ContraKind::Presented);
  return out;
}

Check bijective_levels(const std::vector<AbelianGroup>& src, const std::vector<AbelianGroup>& dst,
                       const std::vector<Matrix>& maps, const std::string& what) {
  for (std::size_t n = 0; n < maps.size(); ++n) {
    if (!is_homomorphism(src[n], dst[n], maps[n]))
      return Check::failed({what + " at level " + std::to_string(n + 1) + " is not well defined"});
    if (!is_injective(src[n], dst[n], maps[n]))
      return Check::failed({what + " at level " + std::to_string(n + 1) + " is not injective"});
    if (!is_surjective(src[n], dst[n], maps[n]))
      return Check::failed({what + " at level " + std::to_string(n + 1) + " is not surjective"});
  }
  return Check::verified(std::to_string(maps.size()) + " levels");
}

struct Embedding {
  Module discrete;
  Module dual;
  Matrix map;
};

/// C -> Hom(⊕ R/I_n, ℚ/ℤ) through the coordinate characters of every level C/I_nC.
Embedding character_embedding(const ContraTrunc& c) {
  const auto& r = c.ring;
  const auto alg = c.top.algebra();
  struct Piece {
    std::size_t level;
    std::size_t coord;
    RightCyclic cyclic;
  };
  std::vector<Piece> pieces;
  for (std::size_t n = 0; n < c.depth(); ++n) {
    const auto& g = c.levels[n].module.group();
    if (g.trivial()) continue;
    RightCyclic cyc = right_cyclic(r.ideals[n]);
    if (!cyc.module.finite()) fail(ErrorKind::FiniteOnly, "R/" + r.ideals[n].to_string() + " is infinite");
    for (std::size_t i = 0; i < g.ngens(); ++i) pieces.push_back({n, i, cyc});
  }
  if (pieces.empty()) {
    Module z = Module::zero(alg, Side::Right);
    return {z, char_dual(z), Matrix(c.top.ngens(), 0)};
  }
  std::vector<Module> parts;
  for (const auto& p : pieces) parts.push_back(p.cyclic.module);
  DirectSum sum = direct_sum(parts);
  const AbelianGroup& ng = sum.module.group();
  Matrix map(c.top.ngens(), ng.ngens());
  for (std::size_t x = 0; x < c.top.ngens(); ++x) {
    const Vec cx = c.top.group().unit(x);
    for (std::size_t t = 0; t < ng.ngens(); ++t) {
      Rational value = 0;
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& piece = pieces[p];
        const Vec y = ng.reduce(ng.unit(t)) * sum.projections[p];
        const Vec ring_rep = alg->group.reduce(y * piece.cyclic.q.lift);
        const auto& level = c.levels[piece.level];
        const Vec z = image(level.module.group(), c.top.act(cx, ring_rep), level.projection);
        value += Rational(z[piece.coord]) / Rational(level.module.group().moduli()[piece.coord]);
      }
      const Integer m = ng.moduli()[t];
      const Rational scaled = value * Rational(m);
      if (denominator(scaled) != 1) fail(ErrorKind::InvalidArgument, "character does not factor through the level");
      map(x, t) = mod(numerator(scaled), m);
    }
  }
  return {sum.module, char_dual(sum.module), map};
}

}  // namespace

std::vector<Ideal> chain_levels(const TopologyBase& b, std::size_t depth) {
  if (b.kind == BaseKind::Chain) return b.chain(depth);
  if (!b.ring.finite()) fail(ErrorKind::ChainRequired, "an infinite ring needs a chain base");
  std::vector<Ideal> members;
  for (const auto& i : b.members())
    if (std::find(members.begin(), members.end(), i) == members.end()) members.push_back(i);
  std::sort(members.begin(), members.end(), [](const Ideal& x, const Ideal& y) { return *x.index() < *y.index(); });
  for (std::size_t n = 0; n + 1 < members.size(); ++n)
    if (!members[n].contains(members[n + 1])) return {least_ideal(b)};
  return members;
}

TowerElement TruncatedTopRing::project(const Element& r) const {
  TowerElement out;
  for (const auto& q : levels) out.levels.push_back(image(q.group, r.coords(), q.projection));
  return out;
}

TowerElement TruncatedTopRing::zero() const { return project(Element::zero(ring())); }
TowerElement TruncatedTopRing::one() const { return project(Element::one(ring())); }

Element TruncatedTopRing::lift(const TowerElement& a, std::size_t n) const {
  if (n == 0 || n > depth()) fail(ErrorKind::DepthMismatch, "level " + std::to_string(n) + " outside 1.." + std::to_string(depth()));
  if (a.levels.size() != depth()) fail(ErrorKind::DepthMismatch, "tower element of depth " + std::to_string(a.levels.size()));
  const auto alg = algebra_of(ring());
  return Element(ring(), alg->group.reduce(a.levels[n - 1] * levels[n - 1].lift));
}

TowerElement TruncatedTopRing::add(const TowerElement& a, const TowerElement& b) const {
  if (a.levels.size() != depth() || b.levels.size() != depth()) fail(ErrorKind::DepthMismatch, "tower elements of different depth");
  TowerElement out;
  for (std::size_t n = 0; n < depth(); ++n) out.levels.push_back(levels[n].group.reduce(a.levels[n] + b.levels[n]));
  return out;
}

std::optional<std::size_t> TruncatedTopRing::level_inside(const Ideal& j) const {
  for (std::size_t n = 0; n < depth(); ++n)
    if (j.contains(ideals[n])) return n + 1;
  return std::nullopt;
}

TowerElement TruncatedTopRing::mul(const TowerElement& a, const TowerElement& b) const {
  TowerElement out;
  for (std::size_t n = 1; n <= depth(); ++n) {
    const Element s = lift(a, n);
    const auto m = level_inside(colon_ideal(ideals[n - 1], s));
    if (!m) fail(ErrorKind::DepthMismatch, "(" + ideals[n - 1].to_string() + " : " + s.to_string() + ") contains no level");
    out.levels.push_back(image(levels[n - 1].group, (s * lift(b, *m)).coords(), levels[n - 1].projection));
  }
  return out;
}

bool TruncatedTopRing::compatible(const TowerElement& a) const {
  if (a.levels.size() != depth()) return false;
  for (std::size_t n = 0; n + 1 < depth(); ++n)
    if (image(levels[n].group, a.levels[n + 1], transitions[n]) != levels[n].group.reduce(a.levels[n])) return false;
  return true;
}

std::string TruncatedTopRing::to_string(const TowerElement& a) const {
  std::string out = "[";
  for (std::size_t n = 0; n < a.levels.size(); ++n) out += (n ? ", " : "") + lift(a, n + 1).to_string();
  return out + "]";
}

std::string TruncatedTopRing::to_string() const {
  std::string out = "completion of " + ring().to_string() + " at depth " + std::to_string(depth()) + ":";
  for (std::size_t n = 0; n < depth(); ++n)
    out += "\n  R/" + ideals[n].to_string() + " = " + levels[n].group.to_string();
  return out;
}

TruncatedTopRing complete_ring(const TopologyBase& b, std::size_t depth, unsigned seed) {
  if (!b.ring.lattice_backed()) fail(ErrorKind::InvalidArgument, "completion needs a lattice-backed ring");
  TruncatedTopRing r;
  r.base = b;
  r.ideals = chain_levels(b, depth);
  const auto alg = algebra_of(b.ring);
  for (const auto& i : r.ideals) {
    r.levels.push_back(quotient(alg->group, i.lattice()));
    if (i.is_two_sided())
      r.native.emplace_back(quotient_algebra(alg, i.lattice(), "R/" + i.to_string()));
    else
      r.native.emplace_back(std::nullopt);
  }
  for (std::size_t n = 0; n + 1 < r.depth(); ++n)
    r.transitions.push_back(map_rows(r.levels[n].group, r.levels[n + 1].lift, r.levels[n].projection));
  r.transitions_surjective = Check::verified("every transition");
  for (std::size_t n = 0; n < r.transitions.size(); ++n)
    if (!is_surjective(r.levels[n + 1].group, r.levels[n].group, r.transitions[n]))
      r.transitions_surjective = Check::failed({"R/I_" + std::to_string(n + 2) + " -> R/I_" + std::to_string(n + 1)});

  const auto sample = sample_elements(r, seed, 8);
  std::size_t pairs = 0;
  r.multiplication = Check::verified("");
  for (const auto& x : sample) {
    for (const auto& y : sample) {
      TowerElement t;
      try {
        t = r.mul(r.project(x), r.project(y));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DepthMismatch) throw;
        continue;
      }
      ++pairs;
      const TowerElement expect = r.project(x * y);
      for (std::size_t n = 0; n < r.depth() && r.multiplication.ok(); ++n) {
        bool agree = t.levels[n] == expect.levels[n];
        if (agree && r.native[n]) {
          const auto& qa = *r.native[n];
          const Vec px = image(qa.algebra->group, x.coords(), qa.projection);
          const Vec py = image(qa.algebra->group, y.coords(), qa.projection);
          const Vec pt = image(qa.algebra->group, r.lift(t, n + 1).coords(), qa.projection);
          agree = qa.algebra->mul(px, py) == pt;
        }
        if (!agree)
          r.multiplication = Check::failed({x.to_string() + "·" + y.to_string() + " at level " + std::to_string(n + 1)});
      }
    }
  }
  if (r.multiplication.ok()) r.multiplication.bound = std::to_string(pairs) + " sampled pairs";
  return r;
}

Module left_quotient_module(const Ideal& i) {
  if (!i.is_two_sided()) fail(ErrorKind::TwoSidedRequired, i.to_string() + " is not two-sided");
  const auto alg = algebra_of(i.ring());
  const Quotient q = quotient(alg->group, i.lattice());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    Matrix a(q.group.ngens(), q.group.ngens());
    for (std::size_t t = 0; t < q.group.ngens(); ++t) a.set_row(t, image(q.group, alg->mul(alg->basis(l), q.lift.row(t)), q.projection));
    actions.push_back(std::move(a));
  }
  return Module(alg, Side::Left, q.group, std::move(actions));
}

std::string to_string(ContraKind k) {
  switch (k) {
    case ContraKind::FreeFinite: return "free";
    case ContraKind::Presented: return "presented";
    case ContraKind::HomDual: return "dual";
  }
  return "?";
}

std::string ContraTrunc::to_string() const {
  std::string out = gabriel::to_string(kind) + " contramodule over " + ring.ring().to_string() + ", depth " +
                    std::to_string(depth()) + ":";
  for (std::size_t n = 0; n < depth(); ++n) {
    out += "\n  level " + std::to_string(n + 1) + ": " + levels[n].module.group().to_string();
    if (n + 1 < depth()) out += "  transition " + transitions[n].to_string();
  }
  return out;
}

ContraTrunc contramodule(const TruncatedTopRing& r, const Module& top, ContraKind kind) {
  require_two_sided(r);
  if (r.depth() == 0) fail(ErrorKind::DepthMismatch, "a completion with no levels");
  ContraTrunc c;
  c.ring = r;
  c.kind = kind;
  Module t = as_left(top);
  const Matrix deepest = ideal_times(r.ideals.back(), t);
  bool killed = true;
  for (std::size_t i = 0; i < deepest.rows(); ++i) killed = killed && is_zero(deepest.row(i));
  c.top = killed ? t : quotient_module(t, deepest).module;
  for (const auto& i : r.ideals) c.levels.push_back(quotient_module(c.top, ideal_times(i, c.top)));
  for (std::size_t n = 0; n + 1 < c.depth(); ++n)
    c.transitions.push_back(map_rows(c.levels[n].module.group(), c.levels[n + 1].lift, c.levels[n].projection));
  return c;
}

ContraTrunc free_contramodule(const TruncatedTopRing& r, std::size_t generators) {
  require_two_sided(r);
  const Module cyc = left_quotient_module(r.ideals.back());
  Module top = generators == 0 ? Module::zero(cyc.algebra(), Side::Left)
                               : direct_sum(std::vector<Module>(generators, cyc)).module;
  ContraTrunc c = contramodule(r, top, ContraKind::FreeFinite);
  c.generators = generators;
  return c;
}

ContraTrunc hom_dual(const TruncatedTopRing& r, const Module& n) {
  const Module right = as_right(n);
  if (!right.finite()) fail(ErrorKind::FiniteOnly, "the dual needs a finite module");
  const Matrix killed = annihilated_by(right, r.ideals.back());
  if (!same_subgroup(right.group(), killed, Matrix::identity(right.ngens())))
    fail(ErrorKind::InvalidArgument, "the module is not killed by " + r.ideals.back().to_string());
  return contramodule(r, char_dual(right), ContraKind::HomDual);
}

Completion complete_module(const Module& m, const TopologyBase& b, std::size_t depth) {
  const TruncatedTopRing r = complete_ring(b, depth);
  require_two_sided(r);
  const Module left = as_left(m);
  const QuotientModule deepest = quotient_module(left, ideal_times(r.ideals.back(), left));
  Completion out{contramodule(r, deepest.module), deepest.projection, {}};
  std::vector<AbelianGroup> src, dst;
  std::vector<Matrix> maps;
  for (std::size_t n = 0; n < r.depth(); ++n) {
    const QuotientModule level = quotient_module(left, ideal_times(r.ideals[n], left));
    const auto& target = out.contra.levels[n];
    Matrix f(level.module.ngens(), target.module.ngens());
    for (std::size_t t = 0; t < level.module.ngens(); ++t) {
      const Vec x = image(deepest.module.group(), level.lift.row(t), deepest.projection);
      f.set_row(t, image(target.module.group(), x, target.projection));
    }
    src.push_back(level.module.group());
    dst.push_back(target.module.group());
    maps.push_back(std::move(f));
  }
  out.level_isomorphisms = bijective_levels(src, dst, maps, "M/I_nM -> Λ/I_nΛ");
  return out;
}

Vec contraaction(const ContraTrunc& c, const FormalSum& sum) {
  const auto& g = c.top.group();
  Vec out = g.zero();
  for (const auto& [a, x] : sum) {
    if (a.levels.size() != c.depth())
      fail(ErrorKind::DepthMismatch, "coefficient of depth " + std::to_string(a.levels.size()) + " against " + std::to_string(c.depth()));
    if (x.size() != c.top.ngens()) fail(ErrorKind::InvalidArgument, "element of the wrong size");
    out = g.reduce(out + c.top.act(x, c.ring.lift(a, c.depth()).coords()));
  }
  return out;
}

FormalSum point_measure(const ContraTrunc& c, const Vec& x) { return {{c.ring.one(), x}}; }

FormalSum open_parentheses(const ContraTrunc& c, const NestedSum& s) {
  FormalSum out;
  for (const auto& [a, inner] : s)
    for (const auto& [b, x] : inner) out.emplace_back(c.ring.mul(a, b), x);
  return out;
}

FormalSum apply_contraaction_inside(const ContraTrunc& c, const NestedSum& s) {
  FormalSum out;
  for (const auto& [a, inner] : s) out.emplace_back(a, contraaction(c, inner));
  return out;
}

Check check_monad_laws(const ContraTrunc& c, unsigned seed, std::size_t samples) {
  std::mt19937 rng(seed);
  const auto& g = c.top.group();
  auto random_vec = [&] {
    std::uniform_int_distribution<int> dist(-5, 5);
    Vec v(g.ngens());
    for (auto& x : v) x = dist(rng);
    return g.reduce(v);
  };
  auto random_coeff = [&] { return c.ring.project(random_element(c.ring.ring(), rng)); };
  auto random_sum = [&](std::size_t len) {
    FormalSum s;
    for (std::size_t i = 0; i < len; ++i) s.emplace_back(random_coeff(), random_vec());
    return s;
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec x = random_vec();
    if (contraaction(c, point_measure(c, x)) != x) return Check::failed({"π(ε(c)) ≠ c for c = " + vec_string(x)});
    NestedSum nested;
    for (std::size_t i = 0; i < 3; ++i) nested.emplace_back(random_coeff(), random_sum(3));
    const Vec lhs = contraaction(c, open_parentheses(c, nested));
    const Vec rhs = contraaction(c, apply_contraaction_inside(c, nested));
    if (lhs != rhs) return Check::failed({"associativity: " + vec_string(lhs) + " ≠ " + vec_string(rhs)});
    const FormalSum s = random_sum(4);
    const Vec total = contraaction(c, s);
    for (std::size_t n = 0; n < c.depth(); ++n) {
      const auto& level = c.levels[n];
      Vec sum = level.module.group().zero();
      for (const auto& [a, y] : s)
        sum = level.module.group().reduce(
            sum + level.module.act(image(level.module.group(), y, level.projection), c.ring.lift(a, n + 1).coords()));
      if (sum != image(level.module.group(), total, level.projection))
        return Check::failed({"level " + std::to_string(n + 1) + " disagrees with the top"});
    }
  }
  return Check::verified(std::to_string(samples) + " random sums");
}

StarReport star_subgroup(const Ideal& i, const ContraTrunc& c) {
  StarReport out;
  out.contains = Check::verified(std::to_string(c.depth()) + " levels");
  out.equal = out.contains;
  for (std::size_t n = 0; n < c.depth(); ++n) {
    const Module& m = c.levels[n].module;
    out.star.push_back(ideal_times(i, m));
    out.product.push_back(generator_products(i, m));
    if (out.contains.ok() && !subgroup_contains(m.group(), out.star.back(), out.product.back()))
      out.contains = Check::failed({"level " + std::to_string(n + 1)});
    if (out.equal.ok() && !same_subgroup(m.group(), out.star.back(), out.product.back()))
      out.equal = Check::failed({"level " + std::to_string(n + 1)});
  }
  return out;
}

RewriteTable strong_generation_rewrite(const std::vector<FamilyEntry>& family, const std::vector<Element>& gens,
                                       const TruncatedTopRing& r) {
  if (gens.empty()) fail(ErrorKind::EmptyGenerators, "no generators");
  const Ring& ring = r.ring();
  const Ideal ideal(ring, gens);
  std::size_t previous = 0;
  for (std::size_t x = 0; x < family.size(); ++x) {
    const auto& e = family[x];
    if (!ideal.contains(e.r)) fail(ErrorKind::NotInIdeal, e.r.to_string() + " is not in " + ideal.to_string());
    if (e.level > r.depth()) fail(ErrorKind::DepthMismatch, "level " + std::to_string(e.level) + " past the depth");
    if (e.level < previous)
      fail(ErrorKind::NotZeroConvergent, "levels decrease at index " + std::to_string(x + 1));
    if (e.level > 0 && !r.ideals[e.level - 1].contains(e.r))
      fail(ErrorKind::NotZeroConvergent, e.r.to_string() + " is not in " + r.ideals[e.level - 1].to_string());
    previous = e.level;
  }
  std::vector<Ideal> js{Ideal::unit(ring)};
  js.insert(js.end(), r.ideals.begin(), r.ideals.end());
  std::vector<Ideal> hs;
  for (const auto& j : js) hs.push_back(translate_product(gens, j));

  const auto alg = algebra_of(ring);
  RewriteTable out;
  out.generators = gens;
  out.thresholds.assign(js.size(), 0);
  out.roundtrip = Check::verified(std::to_string(family.size()) + " entries at " + std::to_string(r.depth()) + " levels");
  out.convergence = out.roundtrip;
  for (std::size_t x = 0; x < family.size(); ++x) {
    const Element& rx = family[x].r;
    std::size_t i = 0;
    while (i + 1 < hs.size() && hs[i + 1].contains(rx)) ++i;
    for (std::size_t h = i + 1; h < hs.size(); ++h) out.thresholds[h] = x + 1;
    const Matrix& basis = js[i].lattice();
    Matrix rows(0, alg->dim());
    for (const auto& s : gens)
      for (std::size_t b = 0; b < basis.rows(); ++b) rows.append_row((s * Element(ring, basis.row(b))).coords());
    const auto coeffs = express(alg->group, rows, rx.coords());
    if (!coeffs) fail(ErrorKind::NotInIdeal, rx.to_string() + " is not in " + hs[i].to_string());
    Element total = Element::zero(ring);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Vec u = zero_vec(alg->dim());
      for (std::size_t b = 0; b < basis.rows(); ++b) u = u + (*coeffs)[j * basis.rows() + b] * basis.row(b);
      Element t(ring, alg->group.reduce(u));
      if (!js[i].contains(t) && out.convergence.ok())
        out.convergence = Check::failed({"t_{" + std::to_string(j + 1) + "," + std::to_string(x + 1) + "} ∉ J_" + std::to_string(i)});
      total = total + gens[j] * t;
      out.entries.push_back({j + 1, x + 1, i, t});
    }
    if (out.roundtrip.ok() && r.project(total) != r.project(rx))
      out.roundtrip = Check::failed({"entry " + std::to_string(x + 1) + ": " + total.to_string() + " ≠ " + rx.to_string()});
  }
  return out;
}

std::string to_string(Variance v) { return v == Variance::Covariant ? "covariant" : "contravariant"; }

FSystem tensor_system(const TruncatedTopRing& r, const Module& m) {
  return quotient_system(r, m, "tp", generator_products);
}

FSystem contratensor_system(const ContraTrunc& c) { return quotient_system(c.ring, c.top, "CT", ideal_times); }

FSystem discrete_hom_system(const TruncatedTopRing& r, const Module& n) {
  const Module right = as_right(n);
  auto cache = std::make_shared<std::map<std::string, Subgroup>>();
  auto at = [cache, right](const Ideal& k) -> const Subgroup& {
    const auto key = k.lattice().to_string();
    auto it = cache->find(key);
    if (it == cache->end()) it = cache->emplace(key, subgroup(right.group(), annihilated_by(right, k))).first;
    return it->second;
  };
  FSystem d;
  d.variance = Variance::Contravariant;
  d.ring = r;
  d.name = "Dh";
  d.value = [at](const Ideal& k) { return at(k).group; };
  d.action = [at, right](const QFMorphism& f) {
    const Subgroup& src = at(f.target());
    const Subgroup& dst = at(f.source());
    Matrix out(src.group.ngens(), dst.group.ngens());
    for (std::size_t t = 0; t < src.inclusion.rows(); ++t) {
      auto c = subgroup_coords(right.group(), dst, right.group().reduce(right.act(src.inclusion.row(t), f.scalar().coords())));
      if (!c) fail(ErrorKind::NotAMorphism, "b·s is not killed by " + f.source().to_string());
      out.set_row(t, *c);
    }
    return out;
  };
  return d;
}

Check check_fsystem(const FSystem& d, unsigned seed) {
  const auto& r = d.ring;
  const Ring& ring = r.ring();
  const Ideal unit = Ideal::unit(ring);
  if (!d.value(unit).trivial()) return Check::failed({"D(R/R) ≠ 0"});
  for (const auto& i : r.ideals) {
    const auto g = d.value(i);
    if (!maps_equal(g, d.action(QFMorphism(i, i, Element::one(ring))), Matrix::identity(g.ngens())))
      return Check::failed({"D(1) ≠ id on R/" + i.to_string()});
  }
  const auto sample = sample_elements(r, seed, 4);
  // Morphism R/I_m -> R/I_n by s, with I_m the shallowest level inside (I_n : s).
  auto morphism = [&](std::size_t n, const Element& s) -> std::optional<QFMorphism> {
    const auto m = r.level_inside(colon_ideal(r.ideals[n], s));
    if (!m) return std::nullopt;
    return QFMorphism(r.ideals[*m - 1], r.ideals[n], s);
  };
  std::size_t checked = 0;
  for (std::size_t n = 0; n < r.depth(); ++n) {
    for (const auto& s : sample) {
      const auto f = morphism(n, s);
      if (!f) continue;
      const std::size_t src = *r.level_inside(f->source()) - 1;
      for (const auto& t : sample) {
        const auto ft = morphism(n, t);
        if (ft) {
          // Both scalars on the deeper of the two sources.
          const Ideal& deeper = r.ideals[std::max(src, *r.level_inside(ft->source()) - 1)];
          const QFMorphism a(deeper, r.ideals[n], s), b(deeper, r.ideals[n], t), ab(deeper, r.ideals[n], s + t);
          const auto target = d.variance == Variance::Covariant ? d.value(r.ideals[n]) : d.value(deeper);
          if (!maps_equal(target, d.action(ab), d.action(a) + d.action(b)))
            return Check::failed({"D(" + s.to_string() + " + " + t.to_string() + ") ≠ D(" + s.to_string() + ") + D(" + t.to_string() + ")"});
        }
        const auto g = morphism(src, t);
        if (!g) continue;
        const QFMorphism fg = qf_compose(*f, *g);
        const Matrix composite = d.variance == Variance::Covariant ? d.action(*g) * d.action(*f) : d.action(*f) * d.action(*g);
        const auto target = d.variance == Variance::Covariant ? d.value(fg.target()) : d.value(fg.source());
        if (!maps_equal(target, d.action(fg), composite))
          return Check::failed({"D(" + s.to_string() + "·" + t.to_string() + ") ≠ D(" + s.to_string() + ")∘D(" + t.to_string() + ")"});
        ++checked;
      }
    }
  }
  return Check::verified(std::to_string(checked) + " composable pairs");
}

Check check_exactness(const FSystem& d) {
  const auto& r = d.ring;
  const Ring& ring = r.ring();
  const auto alg = algebra_of(ring);
  std::vector<Ideal> tops{Ideal::unit(ring)};
  tops.insert(tops.end(), r.ideals.begin(), r.ideals.end());
  std::size_t checked = 0;
  for (std::size_t a = 0; a < tops.size(); ++a) {
    for (std::size_t m = 0; m < r.depth(); ++m) {
      const Ideal& i = tops[a];
      const Ideal& j = r.ideals[m];
      if (!i.contains(j) || i == j) continue;
      std::vector<Element> scalars;
      for (std::size_t row = 0; row < i.lattice().rows(); ++row) scalars.emplace_back(ring, i.lattice().row(row));
      for (const auto& g : i.canonical_generators())
        for (std::size_t l = 0; l < alg->dim(); ++l) scalars.push_back(g * Element(ring, alg->basis(l)));
      const auto dj = d.value(j);
      const auto di = d.value(i);
      const Matrix proj = d.action(QFMorphism(j, i, Element::one(ring)));
      const std::string where = "R/" + j.to_string() + " -> R/" + i.to_string();
      if (d.variance == Variance::Covariant) {
        Matrix images(0, dj.ngens());
        for (const auto& s : scalars) {
          const Ideal k = colon_ideal(j, s);
          const Matrix f = d.action(QFMorphism(k, j, s));
          for (std::size_t row = 0; row < f.rows(); ++row) images.append_row(dj.reduce(f.row(row)));
        }
        if (!is_surjective(dj, di, proj)) return Check::failed({"D(" + where + ") is not surjective"});
        if (!same_subgroup(dj, images, kernel_gens(dj, di, proj))) return Check::failed({"not exact at D(R/" + j.to_string() + ")"});
      } else {
        std::vector<Integer> moduli;
        Matrix big(dj.ngens(), 0);
        for (const auto& s : scalars) {
          const Ideal k = colon_ideal(j, s);
          const auto dk = d.value(k);
          moduli.insert(moduli.end(), dk.moduli().begin(), dk.moduli().end());
          big = Matrix::hstack(big, d.action(QFMorphism(k, j, s)));
        }
        if (!is_injective(di, dj, proj)) return Check::failed({"D(" + where + ") is not injective"});
        if (!same_subgroup(dj, map_rows(dj, Matrix::identity(di.ngens()), proj), kernel_gens(dj, AbelianGroup(moduli), big)))
          return Check::failed({"not exact at D(R/" + j.to_string() + ")"});
      }
      ++checked;
    }
  }
  return Check::verified(std::to_string(checked) + " level pairs");
}

ContraTrunc projective_limit(const FSystem& d) { return limit_data(d).contra; }

Module inductive_limit(const FSystem& m) {
  if (m.variance != Variance::Contravariant) fail(ErrorKind::VarianceMismatch, "IL needs a contravariant system");
  const auto& r = m.ring;
  const Ideal& deepest = r.ideals.back();
  const auto g = m.value(deepest);
  const auto alg = algebra_of(r.ring());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    const Element b(r.ring(), alg->basis(l));
    const auto lvl = r.level_inside(colon_ideal(deepest, b));
    if (!lvl) fail(ErrorKind::DepthMismatch, "(" + deepest.to_string() + " : " + b.to_string() + ") contains no level");
    const Ideal& src = r.ideals[*lvl - 1];
    actions.push_back(m.action(QFMorphism(src, deepest, b)) * m.action(QFMorphism(deepest, src, Element::one(r.ring()))));
  }
  return Module(alg, Side::Right, g, std::move(actions));
}

RoundtripReport fsystem_roundtrip(const FSystem& d, unsigned seed) {
  if (d.variance != Variance::Covariant) fail(ErrorKind::VarianceMismatch, "CT∘PL needs a covariant system");
  RoundtripReport out;
  out.exactness = check_exactness(d);
  out.functoriality = check_fsystem(d, seed);
  const LimitData l = limit_data(d);
  std::vector<AbelianGroup> src, dst;
  std::vector<Matrix> maps;
  for (std::size_t n = 0; n < d.ring.depth(); ++n) {
    const auto& level = l.contra.levels[n];
    src.push_back(level.module.group());
    dst.push_back(l.groups[n]);
    maps.push_back(map_rows(l.groups[n], level.lift, component(l, n)));
  }
  out.roundtrip = bijective_levels(src, dst, maps, "PL(D)/I_n⋆PL(D) -> D(R/I_n)");
  return out;
}

RoundtripReport contramodule_roundtrip(const ContraTrunc& c, unsigned seed) {
  const FSystem d = contratensor_system(c);
  RoundtripReport out = fsystem_roundtrip(d, seed);
  const LimitData l = limit_data(d);
  const AbelianGroup& ambient = l.ambient;
  std::vector<Matrix> projections;
  for (const auto& i : c.ring.ideals) projections.push_back(quotient_module(c.top, ideal_times(i, c.top)).projection);
  Matrix lambda(c.top.ngens(), l.e.group.ngens());
  for (std::size_t t = 0; t < c.top.ngens(); ++t) {
    Vec tuple;
    for (std::size_t n = 0; n < l.groups.size(); ++n) {
      const Vec part = image(l.groups[n], c.top.group().unit(t), projections[n]);
      tuple.insert(tuple.end(), part.begin(), part.end());
    }
    auto coords = subgroup_coords(ambient, l.e, ambient.reduce(tuple));
    if (!coords) fail(ErrorKind::InvalidArgument, "λ(c) is not a compatible tuple");
    lambda.set_row(t, *coords);
  }
  out.complete = is_surjective(c.top.group(), l.e.group, lambda) ? Check::verified("λ onto the limit")
                                                                : Check::failed({"λ is not surjective"});
  out.separated = is_injective(c.top.group(), l.e.group, lambda) ? Check::verified("∩ I_n⋆C = 0")
                                                                : Check::failed({"λ has a kernel"});
  return out;
}

RoundtripReport discrete_roundtrip(const TruncatedTopRing& r, const Module& n, unsigned seed) {
  const Module right = as_right(n);
  const FSystem d = discrete_hom_system(r, right);
  RoundtripReport out;
  out.exactness = check_exactness(d);
  out.functoriality = check_fsystem(d, seed);
  const Module il = inductive_limit(d);
  const Subgroup killed = subgroup(right.group(), annihilated_by(right, r.ideals.back()));
  const Matrix& incl = killed.inclusion;
  if (!is_module_map(il, right, incl))
    out.roundtrip = Check::failed({"IL(Dh(N)) -> N is not a module map"});
  else if (!is_injective(il.group(), right.group(), incl))
    out.roundtrip = Check::failed({"IL(Dh(N)) -> N is not injective"});
  else if (!is_surjective(il.group(), right.group(), incl))
    out.roundtrip = Check::failed({"N has elements not killed by " + r.ideals.back().to_string()});
  else
    out.roundtrip = Check::verified("IL(Dh(N)) ≅ N");
  const TorsionReport torsion = torsion_submodule(right, r.base);
  out.torsion_image = same_subgroup(right.group(), incl, torsion.submodule.inclusion)
                          ? Check::verified("image is the torsion part")
                          : Check::failed({"image differs from the torsion part"});
  return out;
}

DualEmbedding dual_embedding(const ContraTrunc& c) {
  if (!c.top.finite()) fail(ErrorKind::FiniteOnly, "the dual embedding needs a finite contramodule");
  DualEmbedding out;
  const Embedding first = character_embedding(c);
  out.discrete = first.discrete;
  out.target = contramodule(c.ring, first.dual, ContraKind::HomDual);
  out.embedding = first.map;
  const AbelianGroup& cg = c.top.group();
  const AbelianGroup& dg = out.target.top.group();
  out.injective = is_module_map(c.top, out.target.top, out.embedding) && is_injective(cg, dg, out.embedding)
                      ? Check::verified("C -> Hom(N, ℚ/ℤ) injective")
                      : Check::failed({"the character map is not an injective module map"});
  out.quotient_separated = Check::verified(std::to_string(c.depth()) + " levels");
  for (std::size_t n = 0; n < c.depth(); ++n) {
    const Ideal& i = c.ring.ideals[n];
    const Matrix meet = preimage_gens(cg, dg, out.embedding, ideal_times(i, out.target.top));
    if (!same_subgroup(cg, meet, ideal_times(i, c.top))) {
      out.quotient_separated = Check::failed({"C ∩ I⋆D ≠ I⋆C at level " + std::to_string(n + 1)});
      break;
    }
  }
  const QuotientModule cok = module_cokernel(c.top, out.target.top, out.embedding);
  const ContraTrunc e = contramodule(c.ring, cok.module);
  const Embedding second = character_embedding(e);
  out.second = contramodule(c.ring, second.dual, ContraKind::HomDual);
  out.cokernel_map = Matrix(dg.ngens(), out.second.top.ngens());
  for (std::size_t t = 0; t < dg.ngens(); ++t) {
    const Vec q = image(cok.module.group(), dg.unit(t), cok.projection);
    out.cokernel_map.set_row(t, image(out.second.top.group(), q, second.map));
  }
  const Matrix kernel = kernel_gens(dg, out.second.top.group(), out.cokernel_map);
  out.kernel_presentation = same_subgroup(dg, kernel, map_rows(dg, Matrix::identity(cg.ngens()), out.embedding))
                                ? Check::verified("C = ker(D -> D')")
                                : Check::failed({"the kernel of D -> D' differs from C"});
  return out;
}

}  // namespace gabriel
