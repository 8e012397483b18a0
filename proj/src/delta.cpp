#include "gabriel/delta.hpp"

#include "gabriel/errors.hpp"
#include "gabriel/finite.hpp"

#include <set>

namespace gabriel {

namespace {

std::string vec_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + gabriel::to_string(v[i]);
  return out + ")";
}

Module as_left(const Module& m) {
  if (m.side() == Side::Left) return m;
  if (!m.algebra()->commutative) fail(ErrorKind::HandleMismatch, "a left module is required");
  return m.with_side(Side::Left);
}

Matrix mul_reduce(const AbelianGroup& target, const Matrix& a, const Matrix& b) {
  return target.reduce_rows(a * b);
}

Matrix block_diag_power(const Matrix& a, std::size_t k) {
  Matrix out(a.rows() * k, a.cols() * k);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(b * a.rows() + i, b * a.cols() + j) = a(i, j);
  return out;
}

Matrix rows_of(const std::vector<Vec>& rows, std::size_t cols) { return Matrix::from_rows(rows, cols); }

/// Image generators of f: A -> B, as rows in B.
Matrix image_gens(const AbelianGroup& a, const Matrix& f, std::size_t cols) {
  return a.ngens() == 0 ? Matrix(0, cols) : f;
}

Check exact_in_middle(const AbelianGroup& prev, const AbelianGroup& mid, const AbelianGroup& next, const Matrix& in,
                      const Matrix& out, const std::string& label) {
  const Matrix ker = mid.ngens() == 0 ? Matrix(0, 0) : kernel_gens(mid, next, out);
  const Matrix img = image_gens(prev, in, mid.ngens());
  if (mid.ngens() == 0 || same_subgroup(mid, ker.rows() ? ker : Matrix(0, mid.ngens()), img))
    return Check::verified(label + ": kernel equals image");
  return Check::failed({label + ": kernel " + subgroup(mid, ker).group.to_string() + " against image " +
                        subgroup(mid, img).group.to_string()});
}

FiveTermLevel make_level(std::array<AbelianGroup, 5> objects, std::array<Matrix, 4> maps) {
  FiveTermLevel lv{std::move(objects), std::move(maps), {}};
  const auto& o = lv.objects;
  const auto& f = lv.maps;
  lv.exact[0] = is_injective(o[0], o[1], f[0]) ? Check::verified("Ext⁰(K•,B) -> Hom(U,B) injective")
                                              : Check::failed({"Ext⁰(K•,B) -> Hom(U,B) has a kernel"});
  lv.exact[1] = exact_in_middle(o[0], o[1], o[2], f[0], f[1], "Hom(U,B)");
  lv.exact[2] = exact_in_middle(o[1], o[2], o[3], f[1], f[2], "B");
  lv.exact[3] = exact_in_middle(o[2], o[3], o[4], f[2], f[3], "Δ(B)");
  lv.exact[4] = is_surjective(o[3], o[4], f[3]) ? Check::verified("Δ(B) -> Ext¹(U,B) surjective")
                                               : Check::failed({"Δ(B) -> Ext¹(U,B) misses a class"});
  return lv;
}

Check combine(const std::vector<Check>& checks, const std::string& bound) {
  std::vector<std::string> bad;
  for (const auto& c : checks)
    if (!c.ok()) bad.insert(bad.end(), c.witness.begin(), c.witness.end());
  return bad.empty() ? Check::verified(bound) : Check::failed(bad, bound);
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

// The complex R -> U replaced by the mapping cone of R -> P_0 over a free resolution P of U.
struct Cone {
  Resolution p;
  FreeComplex c;
  Vec f1;  // lift of u(1) to P_0
};

constexpr std::size_t kConeLength = 3;

Cone cone_of(const KComplex& k) {
  const Module& u = *k.carrier;
  Resolution p = resolve(u, kConeLength);
  if (p.complex.d.size() < kConeLength) fail(ErrorKind::InvalidArgument, "resolution shorter than requested");
  const auto& alg = p.complex.alg;
  const std::size_t dim = alg->dim();
  const std::size_t r0 = p.complex.ranks[0];
  const Matrix aug = free_map_matrix(alg, Side::Left, r0, u, p.augmentation);
  auto x = express(u.group(), aug, carrier_coords(k.u, k.u.one()));
  if (!x) fail(ErrorKind::InvalidArgument, "augmentation does not reach u(1)");
  FreeComplex c = p.complex;
  c.ranks[1] += 1;
  c.d[0] = Matrix::vstack(p.complex.d[0], rows_of({*x}, r0 * dim));
  c.d[1] = Matrix::hstack(p.complex.d[1], Matrix(p.complex.d[1].rows(), dim));
  return {std::move(p), std::move(c), *x};
}

Module cohomology_module(const Cohomology& h, const Module& m, std::size_t rank) {
  const auto& g = h.h.group;
  if (!m.algebra()->commutative) return Module(integers_algebra(), Side::Left, g, {Matrix::identity(g.ngens())});
  std::vector<Matrix> actions;
  for (const auto& a : m.actions()) actions.push_back(induced_on_cohomology(h, h, block_diag_power(a, rank)));
  return Module(m.algebra(), Side::Left, g, std::move(actions));
}

// B -> Ext¹(cone, B): b ↦ the cochain vanishing on P_1 with value b on the extra generator.
Matrix connecting_from_b(const Cohomology& h1, const Module& b, std::size_t rank1) {
  const std::size_t kn = b.ngens();
  Matrix out(kn, h1.h.group.ngens());
  for (std::size_t x = 0; x < kn; ++x) {
    Vec z = zero_vec(rank1 * kn);
    z[(rank1 - 1) * kn + x] = 1;
    out.set_row(x, class_of(h1.cochains, h1.h, z));
  }
  return out;
}

Matrix drop_last_block(std::size_t blocks, std::size_t kn) {
  Matrix out((blocks) * kn, (blocks - 1) * kn);
  for (std::size_t i = 0; i + kn < blocks * kn; ++i) out(i, i) = 1;
  return out;
}

struct LatticeDelta {
  QuotientModule delta;  // M -> M/{φ(1) : φ ∈ Hom(L_n, M)}
  Matrix restriction;    // Hom(L_n, M) -> M
  HomSpace homs;
};

LatticeDelta lattice_delta(const CarrierLevel& lv, const Module& m) {
  HomSpace h = hom(lv.lattice, m);
  const std::size_t hs = h.sub.group.ngens();
  Matrix res(hs, m.ngens());
  for (std::size_t g = 0; g < hs; ++g) res.set_row(g, m.group().reduce(lv.one * h.map_of(unit_vec(hs, g))));
  QuotientModule q = quotient_module(m, res);
  return {std::move(q), std::move(res), std::move(h)};
}

Matrix transition_of(const QuotientModule& upper, const QuotientModule& lower) {
  return mul_reduce(lower.module.group(), upper.lift, lower.projection);
}

// Restriction Hom(X', N) -> Hom(X, N) along f: X -> X'.
Matrix restrict_homs(const HomSpace& from, const HomSpace& to, const Matrix& f) {
  const std::size_t hs = from.sub.group.ngens();
  Matrix out(hs, to.sub.group.ngens());
  for (std::size_t g = 0; g < hs; ++g)
    out.set_row(g, to.coords_of(mul_reduce(to.target.group(), f, from.map_of(unit_vec(hs, g)))));
  return out;
}

// Composition Hom(X, N) -> Hom(X, N') with f: N -> N'.
Matrix push_homs(const HomSpace& from, const HomSpace& to, const Matrix& f) {
  const std::size_t hs = from.sub.group.ngens();
  Matrix out(hs, to.sub.group.ngens());
  for (std::size_t g = 0; g < hs; ++g)
    out.set_row(g, to.coords_of(mul_reduce(to.target.group(), from.map_of(unit_vec(hs, g)), f)));
  return out;
}

Matrix lattice_composite(const KComplex& k, std::size_t from, std::size_t to) {
  Matrix out = Matrix::identity(k.levels[from - 1].lattice.ngens());
  for (std::size_t n = from; n < to; ++n) out = out * k.lattice_maps[n - 1];
  return out;
}

bool stationary(const Tower& t) {
  for (std::size_t n = 0; n + 1 < t.depth(); ++n)
    if (!(t.levels[n].group() == t.levels[n + 1].group() && t.levels[n].actions() == t.levels[n + 1].actions()))
      return false;
  for (std::size_t n = 0; n + 1 < t.maps.size(); ++n)
    if (t.maps[n] != t.maps[n + 1]) return false;
  return true;
}

// lim of an inverse tower: the tower report, or a stationary finite tower whose map is nilpotent within the depth.
Verdict limit_verdict(const Tower& t, const LimReport& rep, std::string& reason) {
  if (rep.limit) {
    reason = rep.limit->is_zero() ? "limit determined and zero" : "limit determined and nonzero";
    return rep.limit->is_zero() ? Verdict::Zero : Verdict::Nonzero;
  }
  bool finite = true;
  for (const auto& l : t.levels) finite = finite && l.finite();
  if (finite && stationary(t)) {
    const Matrix deep = t.composite(t.depth() - 1, 0);
    if (is_zero_map(t.levels[0].group(), deep)) {
      reason = "stationary finite tower with nilpotent map";
      return Verdict::Zero;
    }
  }
  reason = "limit not determined within depth " + std::to_string(t.depth());
  return Verdict::Indeterminate;
}

Verdict level_verdict(const Tower& t) {
  bool all_zero = true;
  for (const auto& l : t.levels) all_zero = all_zero && l.is_zero();
  if (all_zero) return Verdict::Zero;
  bool surjective = true;
  for (std::size_t n = 0; n < t.maps.size(); ++n)
    surjective = surjective && is_surjective(t.levels[n + 1].group(), t.levels[n].group(), t.maps[n]);
  return surjective ? Verdict::Nonzero : Verdict::Indeterminate;
}

Verdict fold(Verdict lim, Verdict lim1) {
  if (lim == Verdict::Nonzero || lim1 == Verdict::Nonzero) return Verdict::Nonzero;
  if (lim == Verdict::Zero && lim1 == Verdict::Zero) return Verdict::Zero;
  return Verdict::Indeterminate;
}

LimReport limits_or_single(const Tower& t) {
  if (t.depth() >= 2) return tower_limits(t);
  LimReport rep;
  rep.truncation = t.levels.back();
  rep.depth = 1;
  rep.lim1 = Verdict::Zero;
  rep.lim1_reason = "single level";
  return rep;
}

void require_tower(const KComplex& k, std::size_t depth) {
  if (depth == 0) fail(ErrorKind::InvalidArgument, "depth must be positive");
  if (depth > k.depth()) fail(ErrorKind::DepthMismatch, "carrier has " + std::to_string(k.depth()) + " levels");
}

// Hom(A_n, M) along restriction.
Tower hom_a_tower(const KComplex& k, const Module& m, std::size_t depth, std::vector<HomSpace>& spaces) {
  Tower t{Direction::Inverse, {}, {}};
  for (std::size_t n = 1; n <= depth; ++n) {
    spaces.push_back(hom(k.levels[n - 1].quotient.module, m));
    t.levels.push_back(spaces.back().module);
  }
  for (std::size_t n = 1; n < depth; ++n) t.maps.push_back(restrict_homs(spaces[n], spaces[n - 1], k.l_tower.maps[n - 1]));
  return t;
}

std::vector<FiveTermLevel> lattice_five_term(const KComplex& k, const Module& b, std::size_t depth,
                                             std::vector<HomSpace>& hom_l, std::vector<LatticeDelta>& deltas) {
  std::vector<FiveTermLevel> out;
  for (std::size_t n = 1; n <= depth; ++n) {
    const CarrierLevel& lv = k.levels[n - 1];
    HomSpace e0 = hom(lv.quotient.module, b);
    LatticeDelta d = lattice_delta(lv, b);
    const AbelianGroup e1 = ext(lv.lattice, b, 1);
    const std::size_t e0s = e0.sub.group.ngens();
    Matrix a(e0s, d.homs.sub.group.ngens());
    for (std::size_t g = 0; g < e0s; ++g)
      a.set_row(g, d.homs.coords_of(mul_reduce(b.group(), lv.quotient.projection, e0.map_of(unit_vec(e0s, g)))));
    out.push_back(make_level({e0.sub.group, d.homs.sub.group, b.group(), d.delta.module.group(), e1},
                             {a, d.restriction, d.delta.projection, Matrix(d.delta.module.ngens(), e1.ngens())}));
    hom_l.push_back(d.homs);
    deltas.push_back(std::move(d));
  }
  return out;
}

std::string group_list(const std::vector<AbelianGroup>& gs) {
  std::string out;
  for (std::size_t i = 0; i < gs.size(); ++i) out += (i ? ", " : "") + gs[i].to_string();
  return out;
}

}  // namespace

std::string to_string(Node n) {
  switch (n) {
    case Node::Ext0: return "Ext⁰(K•,B)";
    case Node::HomU: return "Hom(U,B)";
    case Node::B: return "B";
    case Node::Delta: return "Δ(B)";
    case Node::Ext1U: return "Ext¹(U,B)";
  }
  return "?";
}

std::string KComplex::to_string() const {
  if (carrier) {
    return "K• = (R -> U), U of order " + gabriel::to_string(carrier->group().order()) + ", H⁻¹ " +
           h_minus1->module.group().to_string() + ", H⁰ " + l_zero->module.group().to_string();
  }
  std::vector<AbelianGroup> gs;
  for (const auto& l : levels) gs.push_back(l.quotient.module.group());
  return "K• = (R -> U), u injective, U/R = colim [" + group_list(gs) + "]";
}

KComplex k_complex(const QuotientRing& u) {
  KComplex k;
  k.u = u;
  const auto alg = algebra_of(u.base.ring);
  k.ring = Module::free(alg, Side::Left, 1);
  if (!u.fractional()) {
    k.carrier = carrier_module(u, Side::Left);
    k.unit = u.unit_map;
    if (!is_module_map(k.ring, *k.carrier, k.unit)) fail(ErrorKind::NotAMorphism, "unit map is not left linear");
    k.h_minus1 = module_kernel(k.ring, *k.carrier, k.unit);
    k.l_zero = module_cokernel(k.ring, *k.carrier, k.unit);
    k.injective = k.h_minus1->module.is_zero();
    return k;
  }
  k.injective = true;
  const std::size_t depth = u.numerators.size();
  for (std::size_t n = 1; n <= depth; ++n) {
    CarrierLevel lv;
    lv.lattice = carrier_module(u, Side::Left, n);
    lv.one = carrier_coords(u, u.one(), n);
    lv.quotient = quotient_module(lv.lattice, rows_of({lv.one}, lv.lattice.ngens()));
    k.levels.push_back(std::move(lv));
  }
  k.l_tower.direction = Direction::Direct;
  for (std::size_t n = 1; n <= depth; ++n) {
    k.l_tower.levels.push_back(k.levels[n - 1].quotient.module);
    if (n == depth) break;
    const Matrix& y = u.numerators[n - 1];
    Matrix f(y.rows(), k.levels[n].lattice.ngens());
    for (std::size_t t = 0; t < y.rows(); ++t) f.set_row(t, carrier_coords(u, QElement{y.row(t), u.denominators[n - 1]}, n + 1));
    k.lattice_maps.push_back(f);
    const auto& upper = k.levels[n].quotient;
    k.l_tower.maps.push_back(mul_reduce(upper.module.group(), k.levels[n - 1].quotient.lift * f, upper.projection));
  }
  return k;
}

std::string DeltaReport::to_string() const {
  std::vector<AbelianGroup> gs;
  for (const auto& l : delta.levels) gs.push_back(l.group());
  std::string out = "Δ via " + path + ": [" + group_list(gs) + "]";
  if (hom_tower) out += ", lim¹ Hom(A_n,M) " + gabriel::to_string(lim1) + " (" + lim1_reason + ")";
  if (indeterminate) out += ", Indeterminate at depth " + std::to_string(delta.depth());
  return out + "; cross-check " + cross_check.to_string();
}

DeltaReport delta_module(const Module& m_in, const KComplex& k, std::size_t depth) {
  const Module m = as_left(m_in);
  if (m.algebra() != k.ring.algebra()) fail(ErrorKind::HandleMismatch, "module over a different ring");
  DeltaReport rep;
  if (k.carrier) {
    rep.path = "mapping cone";
    const Cone cone = cone_of(k);
    const Cohomology h1 = hom_cohomology(cone.c, m, 1);
    const std::size_t rank1 = cone.c.ranks[1];
    rep.delta = Tower{Direction::Inverse, {cohomology_module(h1, m, rank1)}, {}};
    rep.delta_map.push_back(connecting_from_b(h1, m, rank1));
    rep.lim1_reason = "finite carrier";
    const AbelianGroup d = h1.h.group;
    const AbelianGroup e1 = ext(k.l_zero->module, m, 1);
    if (k.injective) {
      rep.cross_check = isomorphic_groups(d, e1)
                            ? Check::verified("Ext¹(U/R, M) by resolution")
                            : Check::failed({"cone " + d.to_string() + " against Ext¹(U/R,M) " + e1.to_string()});
    } else {
      // 0 -> Ext¹(H⁰,M) -> Δ -> Hom(H⁻¹,M) -> Ext²(H⁰,M)
      const Integer hh = hom(k.h_minus1->module, m).sub.group.order();
      const Integer e2 = ext(k.l_zero->module, m, 2).order();
      const Integer dd = d.order();
      const bool ok = dd % e1.order() == 0 && (e1.order() * hh) % dd == 0 && dd * e2 >= e1.order() * hh;
      rep.cross_check = ok ? Check::verified("orders fit Ext¹(H⁰,M) -> Δ -> Hom(H⁻¹,M) -> Ext²(H⁰,M)")
                           : Check::failed({"|Δ| = " + gabriel::to_string(dd) + " against |Ext¹(H⁰,M)| = " +
                                            gabriel::to_string(e1.order()) + ", |Hom(H⁻¹,M)| = " + gabriel::to_string(hh)});
    }
    return rep;
  }
  require_tower(k, depth);
  rep.path = "tower";
  std::vector<LatticeDelta> ds;
  std::vector<Check> checks;
  for (std::size_t n = 1; n <= depth; ++n) {
    ds.push_back(lattice_delta(k.levels[n - 1], m));
    const AbelianGroup e = ext(k.levels[n - 1].quotient.module, m, 1);
    const AbelianGroup& d = ds.back().delta.module.group();
    checks.push_back(isomorphic_groups(d, e) ? Check::verified("")
                                             : Check::failed({"level " + std::to_string(n) + ": " + d.to_string() +
                                                              " against Ext¹(A_n,M) " + e.to_string()}));
    rep.delta.levels.push_back(ds.back().delta.module);
    rep.delta_map.push_back(ds.back().delta.projection);
  }
  rep.delta.direction = Direction::Inverse;
  for (std::size_t n = 1; n < depth; ++n) rep.delta.maps.push_back(transition_of(ds[n].delta, ds[n - 1].delta));
  rep.cross_check = combine(checks, "Ext¹(A_n, M) by resolution at levels 1.." + std::to_string(depth));
  std::vector<HomSpace> spaces;
  rep.hom_tower = hom_a_tower(k, m, depth, spaces);
  const LimReport lr = limits_or_single(*rep.hom_tower);
  rep.lim1 = lr.lim1;
  rep.lim1_reason = lr.lim1_reason;
  rep.indeterminate = lr.lim1 == Verdict::Indeterminate;
  return rep;
}

std::string FiveTermData::to_string() const {
  std::string out = "five-term via " + path + "\n";
  for (std::size_t n = 0; n < levels.size(); ++n) {
    std::vector<AbelianGroup> gs(levels[n].objects.begin(), levels[n].objects.end());
    out += "  level " + std::to_string(n + 1) + ": 0 -> " + group_list(gs) + " -> 0\n";
  }
  out += "  Hom(U,B) " + gabriel::to_string(hom_u) + ", Δ(B) " + gabriel::to_string(delta) + ", Ext¹(U,B) " +
         gabriel::to_string(ext1_u) + (ext1_reason.empty() ? "" : " (" + ext1_reason + ")") + "\n";
  out += "  exact " + exact.to_string();
  if (colimit.status != Status::Unchecked) out += "\n  colimit " + colimit.to_string();
  if (ext2.status != Status::Unchecked) out += "\n  Ext² " + ext2.to_string();
  return out;
}

FiveTermData five_term(const Module& b_in, const KComplex& k, std::size_t depth) {
  const Module b = as_left(b_in);
  if (b.algebra() != k.ring.algebra()) fail(ErrorKind::HandleMismatch, "module over a different ring");
  FiveTermData out;
  if (k.carrier) {
    out.path = "mapping cone";
    const Cone cone = cone_of(k);
    const std::size_t kn = b.ngens();
    const std::size_t r0 = cone.p.complex.ranks[0];
    const std::size_t rank1 = cone.c.ranks[1];
    const Cohomology e0 = hom_cohomology(cone.c, b, 0);
    const Cohomology hu = hom_cohomology(cone.p.complex, b, 0);
    const Cohomology d1 = hom_cohomology(cone.c, b, 1);
    const Cohomology e1 = hom_cohomology(cone.p.complex, b, 1);
    const Matrix a = induced_on_cohomology(e0, hu, Matrix::identity(r0 * kn));
    Matrix bm(hu.h.group.ngens(), kn);
    for (std::size_t g = 0; g < hu.h.group.ngens(); ++g) {
      const Vec phi = hu.h.lift.row(g);
      Matrix images(r0, kn);
      for (std::size_t j = 0; j < r0; ++j)
        for (std::size_t x = 0; x < kn; ++x) images(j, x) = phi[j * kn + x];
      bm.set_row(g, b.group().reduce(cone.f1 * free_map_matrix(k.ring.algebra(), Side::Left, r0, b, images)));
    }
    const Matrix c = connecting_from_b(d1, b, rank1);
    const Matrix e = induced_on_cohomology(d1, e1, drop_last_block(rank1, kn));
    out.levels.push_back(make_level({e0.h.group, hu.h.group, b.group(), d1.h.group, e1.h.group}, {a, bm, c, e}));
    const auto& o = out.levels.back().objects;
    out.hom_u = o[1].trivial() ? Verdict::Zero : Verdict::Nonzero;
    out.delta = o[3].trivial() ? Verdict::Zero : Verdict::Nonzero;
    out.ext1_u = o[4].trivial() ? Verdict::Zero : Verdict::Nonzero;
    out.ext1_reason = "computed exactly";
    const Cohomology k2 = hom_cohomology(cone.c, b, 2);
    const Cohomology u2 = hom_cohomology(cone.p.complex, b, 2);
    const Matrix iso = induced_on_cohomology(k2, u2, Matrix::identity(k2.cochains.ngens()));
    out.ext2 = is_injective(k2.h.group, u2.h.group, iso) && is_surjective(k2.h.group, u2.h.group, iso)
                   ? Check::verified("Ext²(K•,B) = " + k2.h.group.to_string() + " ≅ Ext²(U,B)")
                   : Check::failed({"Ext²(K•,B) " + k2.h.group.to_string() + " against Ext²(U,B) " + u2.h.group.to_string()});
    out.exact = combine({out.levels[0].exact.begin(), out.levels[0].exact.end()}, "exact at all five nodes");
    return out;
  }
  require_tower(k, depth);
  out.path = "tower";
  std::vector<HomSpace> hom_l;
  std::vector<LatticeDelta> ds;
  out.levels = lattice_five_term(k, b, depth, hom_l, ds);
  std::vector<Check> checks;
  for (const auto& l : out.levels) checks.insert(checks.end(), l.exact.begin(), l.exact.end());
  out.exact = combine(checks, "exact at all five nodes, levels 1.." + std::to_string(depth));

  Tower hu{Direction::Inverse, {}, {}};
  for (const auto& h : hom_l) hu.levels.push_back(h.module);
  for (std::size_t n = 1; n < depth; ++n) hu.maps.push_back(restrict_homs(hom_l[n], hom_l[n - 1], k.lattice_maps[n - 1]));
  out.hom_u_tower = hu;
  Tower dt{Direction::Inverse, {}, {}};
  for (const auto& d : ds) dt.levels.push_back(d.delta.module);
  for (std::size_t n = 1; n < depth; ++n) dt.maps.push_back(transition_of(ds[n].delta, ds[n - 1].delta));
  std::vector<HomSpace> spaces;
  const Tower e0 = hom_a_tower(k, b, depth, spaces);

  if (depth >= 2) {
    const LimReport hr = tower_limits(hu);
    std::string reason;
    out.hom_u = limit_verdict(hu, hr, reason);
    out.ext1_u = hr.lim1;
    out.ext1_reason = "lim¹ Hom(L_n,B): " + hr.lim1_reason;
    out.delta = fold(level_verdict(dt), tower_limits(e0).lim1);
  } else {
    out.ext1_reason = "depth 1 does not determine the limits";
  }
  return out;
}

FiveTermData five_term_carrier(const KComplex& k, std::size_t depth) {
  if (k.carrier) return five_term(*k.carrier, k, depth);
  require_tower(k, 2 * depth);
  const std::size_t big = depth;
  const std::size_t bigger = 2 * depth;
  const Module& b = k.levels[big - 1].lattice;
  const Module& b2 = k.levels[bigger - 1].lattice;
  const Matrix iota = lattice_composite(k, big, bigger);
  FiveTermData out;
  out.path = "carrier colimit";
  std::vector<HomSpace> hom_l;
  std::vector<LatticeDelta> ds;
  out.levels = lattice_five_term(k, b, depth, hom_l, ds);
  std::vector<Check> checks;
  for (const auto& l : out.levels) checks.insert(checks.end(), l.exact.begin(), l.exact.end());
  out.exact = combine(checks, "B = L_" + std::to_string(big) + ", exact at all five nodes, levels 1.." + std::to_string(depth));

  std::vector<std::string> bad;
  std::vector<HomSpace> hom_l2;
  for (std::size_t n = 1; n <= depth; ++n) {
    const LatticeDelta d2 = lattice_delta(k.levels[n - 1], b2);
    const Matrix dmap = mul_reduce(d2.delta.module.group(), ds[n - 1].delta.lift * iota, d2.delta.projection);
    if (!is_zero_map(d2.delta.module.group(), dmap)) bad.push_back("Δ_" + std::to_string(n) + " survives into L_" + std::to_string(bigger));
    if (!subgroup_contains(b2.group(), image_gens(d2.homs.sub.group, d2.restriction, b2.ngens()), iota))
      bad.push_back("L_" + std::to_string(big) + " is not reached by Hom(L_" + std::to_string(n) + ", L_" + std::to_string(bigger) + ")");
    hom_l2.push_back(d2.homs);
  }
  for (std::size_t n = 1; n < depth; ++n) {
    const Matrix restr = restrict_homs(hom_l2[n], hom_l2[n - 1], k.lattice_maps[n - 1]);
    const Matrix pushed = push_homs(hom_l[n - 1], hom_l2[n - 1], iota);
    const AbelianGroup& g = hom_l2[n - 1].sub.group;
    if (!subgroup_contains(g, image_gens(hom_l2[n].sub.group, restr, g.ngens()), image_gens(hom_l[n - 1].sub.group, pushed, g.ngens())))
      bad.push_back("restriction to L_" + std::to_string(n) + " is not onto in the colimit");
  }
  out.colimit = bad.empty() ? Check::verified("colimit from L_" + std::to_string(big) + " to L_" + std::to_string(bigger))
                            : Check::failed(bad);
  if (out.colimit.ok()) {
    out.hom_u = Verdict::Nonzero;
    out.delta = Verdict::Zero;
    out.ext1_u = Verdict::Zero;
    out.ext1_reason = "restriction maps onto in the colimit";
  }
  return out;
}

std::string BetaTheta::to_string() const {
  std::string out;
  for (std::size_t n = 0; n < levels.size(); ++n)
    out += "level " + std::to_string(n + 1) + ": Δ " + levels[n].delta.group().to_string() + ", Λ " +
           levels[n].lambda.group().to_string() + "\n";
  out += "β∘δ = λ " + beta_delta.to_string() + "\nθ∘λ = δ " + theta_lambda.to_string() + "\nθ∘β = id " +
         xi.to_string() + "\nβ∘θ = id " + zeta.to_string() + "\nnaturality " + naturality.to_string();
  return out;
}

BetaTheta beta_theta(const Module& m_in, const KComplex& k, const TopologyBase& b, std::size_t depth) {
  const Module m = as_left(m_in);
  if (k.carrier) fail(ErrorKind::InvalidArgument, "β and θ are built on fraction carriers");
  require_tower(k, depth);
  const AbelianGroup& mg = m.group();
  {
    const CarrierLevel& top = k.levels.back();
    const TensorProduct t = tensor(top.lattice, m);
    Matrix f(m.ngens(), t.module.ngens());
    for (std::size_t j = 0; j < m.ngens(); ++j) f.set_row(j, t.pure(top.one, unit_vec(m.ngens(), j)));
    const Matrix ker = kernel_gens(mg, t.module.group(), f);
    for (std::size_t r = 0; r < ker.rows(); ++r)
      if (!is_zero(mg.reduce(ker.row(r))))
        fail(ErrorKind::TorsionObstruction, vec_string(mg.reduce(ker.row(r))) + " dies in U⊗M");
  }
  const Completion lam = complete_module(m, b, depth);
  BetaTheta out;
  std::vector<std::string> bd, tl, xi, ze, nat;
  for (std::size_t n = 1; n <= depth; ++n) {
    const CarrierLevel& lv = k.levels[n - 1];
    const LatticeDelta d = lattice_delta(lv, m);
    const auto& ln = lam.contra.levels[n - 1];
    BetaThetaLevel l;
    l.delta = d.delta.module;
    l.lambda = ln.module;
    const AbelianGroup& dg = l.delta.group();
    const AbelianGroup& lg = l.lambda.group();
    l.delta_map = d.delta.projection;
    l.lambda_map = mul_reduce(lg, lam.lambda, ln.projection);
    l.beta = mul_reduce(lg, d.delta.lift, l.lambda_map);
    if (!is_module_map(l.delta, l.lambda, l.beta)) bd.push_back("β_" + std::to_string(n) + " is not well defined");

    // θ: m ↦ (x ↦ x⊗m) on A_n, lifted along L_n⊗M -> A_n⊗M; the value at 1 lies in M.
    const Module& a = lv.quotient.module;
    const TensorProduct ta = tensor(a, m);
    const TensorProduct tl_ = tensor(lv.lattice, m);
    const std::size_t km = m.ngens();
    Matrix pi_t(tl_.module.ngens(), ta.module.ngens());
    for (std::size_t c = 0; c < tl_.module.ngens(); ++c) {
      const Vec raw = tl_.presented.to_raw.row(c);
      Vec v = ta.module.group().zero();
      for (std::size_t i = 0; i < lv.lattice.ngens(); ++i)
        for (std::size_t j = 0; j < km; ++j)
          if (raw[i * km + j] != 0) v = v + raw[i * km + j] * ta.pure(lv.quotient.projection.row(i), unit_vec(km, j));
      pi_t.set_row(c, ta.module.group().reduce(v));
    }
    Matrix into_t(km, tl_.module.ngens());
    for (std::size_t j = 0; j < km; ++j) into_t.set_row(j, tl_.pure(lv.one, unit_vec(km, j)));
    const HomSpace lifts = hom(lv.lattice, tl_.module);
    const HomSpace below = hom(lv.lattice, ta.module);
    const Matrix down = push_homs(lifts, below, pi_t);
    const std::size_t hs = lifts.sub.group.ngens();
    l.theta = Matrix(lg.ngens(), dg.ngens());
    for (std::size_t g = 0; g < lg.ngens(); ++g) {
      auto mc = express(lg, l.lambda_map, unit_vec(lg.ngens(), g));
      if (!mc) fail(ErrorKind::InvalidArgument, "λ is not onto at level " + std::to_string(n));
      Matrix fm(a.ngens(), ta.module.ngens());
      for (std::size_t x = 0; x < a.ngens(); ++x) fm.set_row(x, ta.pure(unit_vec(a.ngens(), x), *mc));
      const Vec target = below.coords_of(mul_reduce(ta.module.group(), lv.quotient.projection, fm));
      auto coeff = express(below.sub.group, hs ? down : Matrix(0, below.sub.group.ngens()), target);
      if (!coeff) fail(ErrorKind::InvalidArgument, "no lift of x ↦ x⊗m to L_n at level " + std::to_string(n));
      Vec lift_coords = zero_vec(hs);
      for (std::size_t h = 0; h < hs; ++h) lift_coords[h] = (*coeff)[h];
      const Vec value = tl_.module.group().reduce(lv.one * lifts.map_of(lift_coords));
      auto back = express(tl_.module.group(), into_t, value);
      if (!back) fail(ErrorKind::InvalidArgument, "connecting value outside M at level " + std::to_string(n));
      l.theta.set_row(g, dg.reduce(*back * l.delta_map));
    }
    if (!maps_equal(lg, mul_reduce(lg, l.delta_map, l.beta), l.lambda_map)) bd.push_back("level " + std::to_string(n));
    if (!maps_equal(dg, mul_reduce(dg, l.lambda_map, l.theta), l.delta_map)) tl.push_back("level " + std::to_string(n));
    if (!maps_equal(dg, mul_reduce(dg, l.beta, l.theta), Matrix::identity(dg.ngens()))) xi.push_back("level " + std::to_string(n));
    if (!maps_equal(lg, mul_reduce(lg, l.theta, l.beta), Matrix::identity(lg.ngens()))) ze.push_back("level " + std::to_string(n));
    if (n > 1) {
      const BetaThetaLevel& lo = out.levels.back();
      const Matrix td = mul_reduce(lo.delta.group(), d.delta.lift, lo.delta_map);
      const Matrix tlam = lam.contra.transitions[n - 2];
      if (!maps_equal(lo.lambda.group(), l.beta * tlam, td * lo.beta) ||
          !maps_equal(lo.delta.group(), l.theta * td, tlam * lo.theta))
        nat.push_back("levels " + std::to_string(n) + " -> " + std::to_string(n - 1));
    }
    out.levels.push_back(std::move(l));
  }
  const std::string bound = "levels 1.." + std::to_string(depth);
  out.beta_delta = bd.empty() ? Check::verified(bound) : Check::failed(bd, bound);
  out.theta_lambda = tl.empty() ? Check::verified(bound) : Check::failed(tl, bound);
  out.xi = xi.empty() ? Check::verified(bound) : Check::failed(xi, bound);
  out.zeta = ze.empty() ? Check::verified(bound) : Check::failed(ze, bound);
  out.naturality = nat.empty() ? Check::verified(bound) : Check::failed(nat, bound);
  return out;
}

std::string PerpReport::to_string() const {
  std::string out = "Hom(U,C) " + gabriel::to_string(hom_u) + ", Ext¹(U,C) " + gabriel::to_string(ext1_u) + ", member ";
  out += member ? (*member ? "yes" : "no") : "Indeterminate";
  if (extension) out += ", extension through a submodule of size " + std::to_string(extension->size());
  if (prediction.status != Status::Unchecked) out += ", two-piece prediction " + prediction.to_string();
  return out;
}

PerpReport perp_membership(const Module& c_in, const KComplex& k, std::size_t depth) {
  const Module c = as_left(c_in);
  const FiveTermData ft = five_term(c, k, depth);
  PerpReport rep;
  rep.hom_u = ft.hom_u;
  rep.ext1_u = ft.ext1_u;
  if (rep.hom_u != Verdict::Indeterminate && rep.ext1_u != Verdict::Indeterminate)
    rep.member = rep.hom_u == Verdict::Zero && rep.ext1_u == Verdict::Zero;
  if (!k.carrier || k.injective) return rep;
  const Ideal least = least_ideal(k.u.base);
  const FiniteModule fm = tabulate(c);
  std::vector<std::vector<int>> acted(fm.size());
  for (std::size_t x = 0; x < fm.size(); ++x)
    for (const auto& g : least.generators()) acted[x].push_back(fm.index(c.act(fm.elements[x], g.coords())));
  for (const auto& sub : all_submodules(fm)) {
    const std::set<int> s(sub.begin(), sub.end());
    bool ok = true;
    for (int x : sub)
      for (int y : acted[x]) ok = ok && fm.elements[y] == c.group().zero();
    for (std::size_t x = 0; x < fm.size() && ok; ++x)
      for (int y : acted[x]) ok = ok && s.count(y);
    if (ok) {
      rep.extension = sub;
      break;
    }
  }
  const bool predicted = rep.extension.has_value();
  if (rep.member && *rep.member == predicted)
    rep.prediction = Check::verified("all " + std::to_string(all_submodules(fm).size()) + " submodules searched");
  else
    rep.prediction = Check::failed({std::string("membership ") + (rep.member && *rep.member ? "holds" : "fails") +
                                    " but a two-piece extension " + (predicted ? "exists" : "does not exist")});
  return rep;
}

Ext2Report ext2_vanish(const KComplex& k, const Module& b_in) {
  Ext2Report rep;
  if (!k.carrier) {
    rep.note = "hereditary ring, vacuous";
    rep.vanish = Check::verified("global dimension 1");
    return rep;
  }
  const Module b = as_left(b_in);
  rep.ext2_u = ext(*k.carrier, b, 2);
  rep.ext2_k = hom_cohomology(cone_of(k).c, b, 2).h.group;
  rep.note = "resolution of U and the mapping cone";
  if (rep.ext2_u->trivial() && rep.ext2_k->trivial())
    rep.vanish = Check::verified("exact");
  else
    rep.vanish = Check::failed({"Ext²(U,B) = " + rep.ext2_u->to_string() + ", Ext²(K•,B) = " + rep.ext2_k->to_string()});
  return rep;
}

std::string EndoReport::to_string() const {
  std::string out;
  for (std::size_t n = 0; n < levels.size(); ++n)
    out += "level " + std::to_string(n + 1) + ": |R/I_n| = " + gabriel::to_string(levels[n].ring_size) +
           ", |End(A_n)| = " + gabriel::to_string(levels[n].endo_size) + "\n";
  out += "injective " + injective.to_string() + "\nbijective " + bijective.to_string() + "\nmultiplicative " +
         multiplicative.to_string() + "\ntransitions " + transitions.to_string() + "\ntopology " + topology.to_string();
  for (const auto& w : witnesses) out += "\n  " + w;
  return out;
}

EndoReport endo_compare(const KComplex& k, const TopologyBase& b, std::size_t depth) {
  if (!k.injective) fail(ErrorKind::FaithfulOnly, "the unit map has kernel " + k.u.torsion.to_string());
  if (k.carrier) fail(ErrorKind::InvalidArgument, "the endomorphism comparison runs on fraction carriers");
  require_tower(k, depth);
  const TruncatedTopRing r = complete_ring(b, depth);
  const auto& alg = k.ring.algebra();
  EndoReport rep;
  std::vector<std::string> inj, bij, mul, tr, top;
  std::vector<HomSpace> ends;
  for (std::size_t n = 1; n <= depth; ++n) {
    const Module& a = k.levels[n - 1].quotient.module;
    ends.push_back(hom(a, a));
    const HomSpace& e = ends.back();
    const Quotient& rq = r.levels[n - 1];
    EndoLevel lv{rq.group.order(), e.sub.group.order(), Matrix(rq.group.ngens(), e.sub.group.ngens())};
    for (std::size_t g = 0; g < rq.group.ngens(); ++g) lv.sigma.set_row(g, e.coords_of(a.action(rq.lift.row(g))));
    const std::string tag = "level " + std::to_string(n);
    if (!is_injective(rq.group, e.sub.group, lv.sigma)) inj.push_back(tag);
    if (!is_injective(rq.group, e.sub.group, lv.sigma) || !is_surjective(rq.group, e.sub.group, lv.sigma)) bij.push_back(tag);
    for (const auto& i : r.ideals[n - 1].generators())
      if (!is_zero_map(a.group(), a.action(i.coords()))) mul.push_back(tag + ": " + i.to_string() + " acts nontrivially");
    if (!maps_equal(a.group(), a.action(alg->one), Matrix::identity(a.ngens()))) mul.push_back(tag + ": σ(1) ≠ id");
    for (std::size_t g = 0; g < rq.group.ngens(); ++g)
      for (std::size_t h = 0; h < rq.group.ngens(); ++h) {
        const Vec x = rq.lift.row(g);
        const Vec y = rq.lift.row(h);
        if (!maps_equal(a.group(), a.action(alg->mul(x, y)), a.action(x) * a.action(y)))
          mul.push_back(tag + ": σ(rs) ≠ σ(r)σ(s) for r = " + vec_string(x) + ", s = " + vec_string(y));
      }
    if (n > 1) {
      const Module& lower = k.levels[n - 2].quotient.module;
      const Matrix& incl = k.l_tower.maps[n - 2];
      const HomSpace& el = ends[n - 2];
      const std::size_t hs = e.sub.group.ngens();
      Matrix restr(hs, el.sub.group.ngens());
      for (std::size_t g = 0; g < hs; ++g) {
        const Matrix f = mul_reduce(a.group(), incl, e.map_of(unit_vec(hs, g)));
        Matrix back(lower.ngens(), lower.ngens());
        for (std::size_t x = 0; x < lower.ngens(); ++x) {
          auto c = express(a.group(), incl, f.row(x));
          if (!c) fail(ErrorKind::InvalidArgument, "endomorphism does not preserve A_" + std::to_string(n - 1));
          back.set_row(x, lower.group().reduce(*c));
        }
        restr.set_row(g, el.coords_of(back));
      }
      const Matrix& sl = rep.levels.back().sigma;
      if (!maps_equal(el.sub.group, r.transitions[n - 2] * sl, lv.sigma * restr))
        tr.push_back("levels " + std::to_string(n) + " -> " + std::to_string(n - 1));
    }
    const Ideal& level = r.ideals[n - 1];
    auto cert = find_certificate(level, k.u);
    if (!cert) {
      top.push_back(tag + ": no certificate for " + level.to_string());
    } else {
      const AnnihilatorReport ann = annihilator_preimage(*cert, k.u);
      if (!ann.containment.ok()) top.push_back(tag + ": " + ann.annihilator.to_string() + " ⊄ " + level.to_string());
      rep.witnesses.push_back(tag + ": " + to_string(*cert, k.u) + "; annihilator " + ann.annihilator.to_string() +
                              " ⊆ " + level.to_string());
    }
    rep.levels.push_back(std::move(lv));
  }
  const std::string bound = "levels 1.." + std::to_string(depth);
  rep.injective = inj.empty() ? Check::verified(bound) : Check::failed(inj, bound);
  rep.bijective = bij.empty() ? Check::verified(bound) : Check::failed(bij, bound);
  rep.multiplicative = mul.empty() ? Check::verified(bound) : Check::failed(mul, bound);
  rep.transitions = tr.empty() ? Check::verified(bound) : Check::failed(tr, bound);
  rep.topology = top.empty() ? Check::verified(bound) : Check::failed(top, bound);
  return rep;
}

}  // namespace gabriel
