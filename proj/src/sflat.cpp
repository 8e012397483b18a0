#include "gabriel/sflat.hpp"

#include "gabriel/errors.hpp"

namespace gabriel {

namespace {

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

Module as_left(const Module& m) {
  if (m.side() == Side::Left) return m;
  if (!m.algebra()->commutative) fail(ErrorKind::HandleMismatch, "a left module is required");
  return m.with_side(Side::Left);
}

// Rows spanning H·M: h·x over a ℤ-basis of H and the generators of M.
Matrix ideal_times(const Ideal& h, const Module& m) {
  Matrix rows(0, m.ngens());
  const Matrix& basis = h.lattice();
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t x = 0; x < m.ngens(); ++x) rows.append_row(m.group().reduce(m.act(unit_vec(m.ngens(), x), basis.row(r))));
  return rows;
}

Module over_quotient(const Module& x, const Ideal& h) {
  const QuotientAlgebra qa = quotient_algebra(x.algebra(), h.lattice(), "R/" + h.to_string());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < qa.algebra->dim(); ++l) actions.push_back(x.action(qa.lift.row(l)));
  return Module(qa.algebra, x.side(), x.group(), std::move(actions));
}

std::vector<Ideal> base_ideals(const KComplex& k, std::size_t depth) {
  std::vector<Ideal> out;
  if (k.carrier) {
    for (const auto& i : k.u.base.members())
      if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
  } else {
    out = chain_levels(k.u.base, depth);
  }
  for (const auto& i : out)
    if (!i.is_two_sided()) fail(ErrorKind::TwoSidedRequired, i.to_string() + " is not two-sided");
  return out;
}

// U ⊗_R F as a left U-module for a finite carrier.
Module carrier_tensor(const KComplex& k, const Module& f) {
  const TensorProduct t = tensor(carrier_module(k.u, Side::Right), f);
  const ZAlgebra& ua = *k.u.algebra;
  const std::size_t ku = ua.dim();
  const std::size_t kf = f.ngens();
  const std::size_t ts = t.module.ngens();
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < ku; ++l) {
    Matrix a(ku * kf, ku * kf);
    for (std::size_t i = 0; i < ku; ++i) {
      const Vec bi = ua.mul(ua.basis(l), ua.basis(i));
      for (std::size_t i2 = 0; i2 < ku; ++i2)
        for (std::size_t j = 0; j < kf; ++j) a(i * kf + j, i2 * kf + j) = bi[i2];
    }
    actions.push_back(ts ? t.module.group().reduce_rows(t.presented.to_raw * a * t.presented.to_canon) : Matrix(0, 0));
  }
  return Module(k.u.algebra, Side::Left, t.module.group(), std::move(actions));
}

Check torsion_free(const AbelianGroup& g, const std::string& what) {
  if (g.free_rank() == g.ngens()) return Check::verified(what + " torsion-free of rank " + std::to_string(g.ngens()));
  return Check::failed({what + " has torsion " + g.to_string()});
}

QuotientCondition quotient_condition(const Ideal& h, const Module& x) {
  QuotientCondition q{h, x.group(), {}};
  q.projective = projective_check(over_quotient(x, h));
  return q;
}

}  // namespace

Check projective_check(const Module& x) {
  if (x.is_zero()) return Check::verified("zero module");
  const auto& alg = x.algebra();
  const std::size_t k = x.ngens();
  const Module f = Module::free(alg, x.side(), k);
  const Matrix cover = free_map_matrix(alg, x.side(), k, x, Matrix::identity(k));
  const KernelResult ker = module_kernel(f, x, cover);
  const AbelianGroup e = ext(x, ker.module, 1);
  if (e.trivial()) return Check::verified("free cover of rank " + std::to_string(k) + " splits");
  return Check::failed({"Ext¹ against the kernel of the free cover is " + e.to_string()});
}

GTower materialize(const ExtensionDatum& d, const KComplex& k, std::size_t depth) {
  if (k.carrier || k.u.base.ring.cls() != RingClass::Integers)
    fail(ErrorKind::UnsupportedPresentation, "extension data are built over ℤ with a fraction carrier");
  if (depth == 0 || depth > k.depth()) fail(ErrorKind::DepthMismatch, "carrier has " + std::to_string(k.depth()) + " levels");
  if (d.w_rank == 0) fail(ErrorKind::InvalidArgument, "an extension datum needs w >= 1");
  const Integer q = k.u.denominators[0];
  const std::size_t v = d.v_rank;
  const std::size_t w = d.w_rank;
  const std::size_t r = v + w;
  const auto zalg = k.ring.algebra();
  auto glue = [&](std::size_t m, std::size_t j, std::size_t i) -> Integer {
    if (m - 1 >= d.glue.size()) return 0;
    const Matrix& c = d.glue[m - 1];
    return j < c.rows() && i < c.cols() ? c(j, i) : Integer(0);
  };
  GTower g;
  std::vector<DirectSum> ws;
  for (std::size_t m = 1; m <= depth; ++m) {
    g.levels.push_back(Module::free(zalg, Side::Left, r));
    ws.push_back(direct_sum(std::vector<Module>(w, k.levels[m - 1].lattice)));
    const Vec basis = carrier_coords(k.u, QElement{{1}, ipow(q, static_cast<unsigned>(m))}, m);
    Matrix to_w(r, ws.back().module.ngens());
    for (std::size_t j = 0; j < w; ++j) to_w.set_row(v + j, basis * ws.back().injections[j]);
    g.to_w.push_back(std::move(to_w));
    if (m == 1) continue;
    Matrix f = Matrix::identity(r);
    for (std::size_t j = 0; j < w; ++j) {
      f(v + j, v + j) = q;
      for (std::size_t i = 0; i < v; ++i) f(v + j, i) = -glue(m - 1, j, i);
    }
    g.maps.push_back(std::move(f));
  }
  std::vector<std::string> bad;
  Matrix e(0, r);
  for (std::size_t i = 0; i < v; ++i) e.append_row(unit_vec(r, i));
  for (std::size_t m = 1; m <= depth; ++m) {
    const AbelianGroup& gg = g.levels[m - 1].group();
    const AbelianGroup& wg = ws[m - 1].module.group();
    const Matrix ker = kernel_gens(gg, wg, g.to_w[m - 1]);
    if (!same_subgroup(gg, ker.rows() ? ker : Matrix(0, r), e)) bad.push_back("level " + std::to_string(m) + ": kernel is not V");
    if (!is_surjective(gg, wg, g.to_w[m - 1])) bad.push_back("level " + std::to_string(m) + ": G -> W not onto");
    if (m < depth) {
      Matrix wmap(wg.ngens(), ws[m].module.ngens());
      for (std::size_t j = 0; j < w; ++j) wmap = wmap + ws[m - 1].projections[j] * k.lattice_maps[m - 1] * ws[m].injections[j];
      if (!maps_equal(ws[m].module.group(), g.maps[m - 1] * g.to_w[m], g.to_w[m - 1] * wmap))
        bad.push_back("levels " + std::to_string(m) + " -> " + std::to_string(m + 1) + " do not commute");
    }
  }
  g.exact = bad.empty() ? Check::verified("0 -> V -> G_m -> W_m -> 0 at levels 1.." + std::to_string(depth))
                        : Check::failed(bad);
  return g;
}

bool StrongFlatReport::strongly_flat() const {
  if (!flat.ok() || !tensor_projective.ok()) return false;
  for (const auto& q : quotients)
    if (!q.projective.ok()) return false;
  return true;
}

std::string StrongFlatReport::to_string() const {
  std::string out = "flat " + flat.to_string() + "\n(i) U⊗F = " + tensor.to_string() + ": " + tensor_projective.to_string();
  for (const auto& q : quotients)
    out += "\n(ii) F/HF for H = " + q.ideal.to_string() + ": " + q.quotient.to_string() + ", " + q.projective.to_string();
  if (tower) out += "\nsequence " + tower->exact.to_string();
  out += std::string("\nstrongly flat: ") + (strongly_flat() ? "yes" : "no");
  return out;
}

StrongFlatReport strongly_flat_check(const Module& f_in, const KComplex& k, std::size_t depth) {
  const Module f = as_left(f_in);
  StrongFlatReport rep;
  if (k.carrier) {
    rep.flat = projective_check(f);
    if (!rep.flat.ok()) fail(ErrorKind::NotFlat, "finitely generated and not projective over a finite ring");
    const Module t = carrier_tensor(k, f);
    rep.tensor = t.group();
    rep.tensor_projective = projective_check(t);
  } else {
    rep.flat = torsion_free(f.group(), "F");
    if (!rep.flat.ok()) fail(ErrorKind::NotFlat, rep.flat.witness.front());
    const TensorProduct t = tensor(k.levels.back().lattice, f);
    rep.tensor = t.module.group();
    rep.tensor_projective = torsion_free(rep.tensor, "U⊗F over a Dedekind localization,");
  }
  for (const auto& h : base_ideals(k, depth)) rep.quotients.push_back(quotient_condition(h, quotient_module(f, ideal_times(h, f)).module));
  return rep;
}

StrongFlatReport strongly_flat_check(const ExtensionDatum& d, const KComplex& k, std::size_t depth) {
  const std::size_t big = 2 * depth;
  GTower g = materialize(d, k, big);
  StrongFlatReport rep;
  rep.flat = g.exact.ok() ? torsion_free(g.levels.back().group(), "G_" + std::to_string(big))
                          : Check::failed(g.exact.witness);
  if (!rep.flat.ok()) fail(ErrorKind::NotFlat, rep.flat.witness.front());
  const std::vector<Ideal> levels = base_ideals(k, depth);
  // U⊗G = U⊗G_1 when every transition has cokernel killed by the first level.
  std::vector<std::string> bad;
  for (std::size_t m = 0; m < g.maps.size(); ++m) {
    const Module c = quotient_module(g.levels[m + 1], g.maps[m]).module;
    if (!is_zero_map(c.group(), ideal_times(levels.front(), c)))
      bad.push_back("cokernel of G_" + std::to_string(m + 1) + " -> G_" + std::to_string(m + 2) + " is not killed by " +
                    levels.front().to_string());
  }
  const TensorProduct t = tensor(k.levels[big - 1].lattice, g.levels.front());
  rep.tensor = t.module.group();
  const Check tf = torsion_free(rep.tensor, "U⊗G_1 over a Dedekind localization,");
  rep.tensor_projective = bad.empty() && tf.ok() ? tf : Check::failed(bad.empty() ? tf.witness : bad);
  const Module& top = g.levels[big - 1];
  std::vector<Matrix> to_top(big, Matrix::identity(top.ngens()));
  for (std::size_t j = big - 1; j-- > 0;) to_top[j] = g.maps[j] * to_top[j + 1];
  for (std::size_t n = 1; n <= depth; ++n) {
    const Ideal& h = levels[n - 1];
    const QuotientModule y = quotient_module(top, ideal_times(h, top));
    const Matrix image = to_top[big - n - 1] * y.projection;
    QuotientCondition qc = quotient_condition(h, submodule(y.module, image).module);
    for (std::size_t j = 1; j + n <= big; ++j)
      if (!same_subgroup(y.module.group(), to_top[j - 1] * y.projection, image)) {
        qc.projective = Check::failed({"image of G_" + std::to_string(j) + " in G_" + std::to_string(big) + "/" +
                                       h.to_string() + " has not stabilized"});
        break;
      }
    rep.quotients.push_back(std::move(qc));
  }
  rep.tower = std::move(g);
  return rep;
}

WeakCotorsionReport weakly_cotorsion_check(const Module& c, const KComplex& k, std::size_t depth) {
  WeakCotorsionReport rep;
  rep.five_term = five_term(c, k, depth);
  rep.ext1 = rep.five_term.ext1_u;
  rep.reason = rep.five_term.ext1_reason;
  return rep;
}

WeakCotorsionReport weakly_cotorsion_carrier(const KComplex& k, std::size_t depth) {
  WeakCotorsionReport rep;
  rep.five_term = five_term_carrier(k, depth);
  rep.ext1 = rep.five_term.ext1_u;
  rep.reason = rep.five_term.ext1_reason;
  return rep;
}

std::string Filtration::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i)
    out += "G^" + std::to_string(i) + "/G^" + std::to_string(i + 1) + " = " + steps[i].quotient.to_string() + ", " +
           steps[i].annihilated.to_string() + "\n";
  return out + "limit " + limit.to_string();
}

Filtration two_sided_filtration(const ContraTrunc& c) {
  const auto& ideals = c.ring.ideals;
  for (const auto& i : ideals)
    if (!i.is_two_sided()) fail(ErrorKind::TwoSidedRequired, i.to_string() + " is not two-sided");
  const Module& top = c.top;
  const AbelianGroup& tg = top.group();
  const std::size_t k = ideals.size();
  std::vector<Matrix> g{Matrix::identity(top.ngens())};
  for (const auto& h : ideals) g.push_back(ideal_times(h, top));
  Filtration out;
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < k; ++i) {
    const Subgroup s = subgroup(tg, g[i]);
    Matrix rel(0, s.group.ngens());
    for (std::size_t r = 0; r < g[i + 1].rows(); ++r) {
      auto co = subgroup_coords(tg, s, g[i + 1].row(r));
      if (!co) fail(ErrorKind::InvalidArgument, "filtration is not decreasing");
      rel.append_row(*co);
    }
    FiltrationStep st{g[i], quotient(s.group, rel).group, {}};
    Matrix acted(0, top.ngens());
    for (std::size_t r = 0; r < ideals[i].lattice().rows(); ++r)
      for (std::size_t x = 0; x < g[i].rows(); ++x) acted.append_row(tg.reduce(top.act(g[i].row(x), ideals[i].lattice().row(r))));
    st.annihilated = subgroup_contains(tg, g[i + 1], acted)
                         ? Check::verified(ideals[i].to_string() + " kills G^" + std::to_string(i) + "/G^" + std::to_string(i + 1))
                         : Check::failed({ideals[i].to_string() + " does not kill G^" + std::to_string(i) + "/G^" + std::to_string(i + 1)});
    out.steps.push_back(std::move(st));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& level = c.levels[i - 1];
    const Matrix ker = kernel_gens(tg, level.module.group(), level.projection);
    if (!same_subgroup(tg, ker.rows() ? ker : Matrix(0, top.ngens()), g[i])) bad.push_back("C/G^" + std::to_string(i) + " differs from level " + std::to_string(i));
  }
  if (!is_zero_map(tg, g[k])) bad.push_back("G^" + std::to_string(k) + " is not zero at the truncation");
  out.limit = bad.empty() ? Check::verified("C ≅ lim C/G^i at depth " + std::to_string(k)) : Check::failed(bad);
  return out;
}

}  // namespace gabriel
