#include "gabriel/module.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gabriel {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

std::vector<Integer> concat_moduli(const std::vector<AbelianGroup>& parts) {
  std::vector<Integer> m;
  for (const auto& g : parts) m.insert(m.end(), g.moduli().begin(), g.moduli().end());
  return m;
}

Matrix block_diag_all(const std::vector<Matrix>& blocks) {
  Matrix out;
  for (const auto& b : blocks) out = Matrix::block_diag(out, b);
  return out;
}

Matrix mult_matrix(const ZAlgebra& alg, Side side, const Vec& r) {
  return side == Side::Right ? alg.right_mult(r) : alg.left_mult(r);
}

Matrix rows_or_empty(const Matrix& m, std::size_t cols) { return m.rows() == 0 ? Matrix(0, cols) : m; }

}  // namespace

Module::Module(AlgebraPtr alg, Side side, AbelianGroup group, std::vector<Matrix> actions)
    : alg_(std::move(alg)), side_(side), group_(std::move(group)), actions_(std::move(actions)) {
  if (!alg_) fail(ErrorKind::InvalidArgument, "module without algebra");
  if (actions_.size() != alg_->dim()) fail(ErrorKind::InvalidArgument, "one action matrix per algebra basis element required");
  for (auto& a : actions_) {
    if (a.rows() != group_.ngens() || a.cols() != group_.ngens()) {
      if (group_.ngens() == 0) {
        a = Matrix(0, 0);
        continue;
      }
      fail(ErrorKind::InvalidArgument, "action matrix has the wrong size");
    }
    a = group_.reduce_rows(a);
  }
}

Module Module::free(const AlgebraPtr& alg, Side side, std::size_t rank) {
  std::vector<AbelianGroup> parts(rank, alg->group);
  AbelianGroup g(concat_moduli(parts));
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l)
    actions.push_back(block_diag_all(std::vector<Matrix>(rank, mult_matrix(*alg, side, alg->basis(l)))));
  return Module(alg, side, std::move(g), std::move(actions));
}

Module Module::zero(const AlgebraPtr& alg, Side side) {
  return Module(alg, side, AbelianGroup(), std::vector<Matrix>(alg->dim(), Matrix(0, 0)));
}

Matrix Module::action(const Vec& r) const {
  Matrix out(ngens(), ngens());
  for (std::size_t l = 0; l < alg_->dim(); ++l)
    if (r[l] != 0) out = out + r[l] * actions_[l];
  return group_.reduce_rows(out);
}

Vec Module::act(const Vec& x, const Vec& r) const {
  if (ngens() == 0) return {};
  return group_.reduce(x * action(r));
}

Module Module::with_side(Side s) const {
  if (s == side_) return *this;
  if (!alg_->commutative) fail(ErrorKind::InvalidArgument, "side change needs a commutative ring");
  return Module(alg_, s, group_, actions_);
}

bool Module::valid() const {
  const std::size_t k = ngens();
  for (const auto& a : actions_)
    if (!is_homomorphism(group_, group_, k ? a : Matrix(0, 0))) return false;
  if (k == 0) return true;
  if (!maps_equal(group_, action(alg_->one), Matrix::identity(k))) return false;
  for (std::size_t l = 0; l < alg_->dim(); ++l)
    for (std::size_t m = 0; m < alg_->dim(); ++m) {
      Matrix prod = action(alg_->product[l][m]);
      Matrix seq = side_ == Side::Right ? actions_[l] * actions_[m] : actions_[m] * actions_[l];
      if (!maps_equal(group_, prod, seq)) return false;
    }
  return true;
}

std::string Module::to_string() const {
  return gabriel::to_string(side_) + " module over " + alg_->name + " with group " + group_.to_string();
}

Realized realize(const AlgebraPtr& alg, Side side, std::size_t gens, const std::vector<Vec>& relations) {
  const std::size_t dim = alg->dim();
  const std::size_t n = gens * dim;
  Matrix rel(0, n);
  for (const auto& rho : relations) {
    if (rho.size() != n) fail(ErrorKind::InvalidArgument, "relation length does not match generators");
    for (std::size_t l = 0; l < dim; ++l) {
      Vec row(n);
      for (std::size_t j = 0; j < gens; ++j) {
        Vec x(rho.begin() + static_cast<long>(j * dim), rho.begin() + static_cast<long>((j + 1) * dim));
        Vec y = side == Side::Right ? alg->mul(x, alg->basis(l)) : alg->mul(alg->basis(l), x);
        std::copy(y.begin(), y.end(), row.begin() + static_cast<long>(j * dim));
      }
      rel.append_row(row);
    }
  }
  Module raw = Module::free(alg, side, gens);
  Matrix all = Matrix::vstack(rel, raw.group().relations());
  Presented p = present(n, all);
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < dim; ++l) actions.push_back(p.to_raw * raw.actions()[l] * p.to_canon);
  Module m(alg, side, p.group, std::move(actions));
  Matrix images(gens, p.group.ngens());
  for (std::size_t j = 0; j < gens; ++j) {
    Vec e(n);
    for (std::size_t i = 0; i < dim; ++i) e[j * dim + i] = alg->one[i];
    images.set_row(j, p.group.reduce(e * p.to_canon));
  }
  return {std::move(m), std::move(images)};
}

Realized realize(const FPModule& m) {
  if (!m.ring.lattice_backed()) fail(ErrorKind::UnsupportedPresentation, "polynomial modules have no finite ℤ-presentation");
  AlgebraPtr alg = algebra_of(m.ring);
  std::vector<Vec> rels;
  for (const auto& row : m.relations) {
    if (row.size() != m.generators) fail(ErrorKind::InvalidArgument, "relation row has the wrong length");
    Vec v;
    for (const auto& e : row) {
      if (!(e.ring() == m.ring)) fail(ErrorKind::HandleMismatch, "relation entry from another ring");
      const Vec& c = e.coords();
      v.insert(v.end(), c.begin(), c.end());
    }
    rels.push_back(std::move(v));
  }
  return realize(alg, m.side, m.generators, rels);
}

Matrix map_from_generators(const Realized& source, const Module& target, const Matrix& images) {
  const Module& m = source.module;
  const AlgebraPtr& alg = m.algebra();
  Matrix span = free_map_matrix(alg, m.side(), source.generator_images.rows(), m, source.generator_images);
  Matrix values = free_map_matrix(alg, m.side(), images.rows(), target, images);
  Matrix out(m.ngens(), target.ngens());
  for (std::size_t i = 0; i < m.ngens(); ++i) {
    auto c = express(m.group(), span, m.group().unit(i));
    if (!c) fail(ErrorKind::InvalidArgument, "presentation generators do not generate");
    out.set_row(i, target.ngens() ? target.group().reduce(*c * values) : Vec{});
  }
  if (!is_module_map(m, target, out)) fail(ErrorKind::NotAMorphism, "generator images violate the relations");
  return out;
}

Module cyclic_module(const Ideal& i) {
  std::vector<Vec> rels;
  for (const auto& g : i.canonical_generators()) rels.push_back(g.coords());
  return realize(algebra_of(i.ring()), Side::Right, 1, rels).module;
}

IdealModule ideal_module(const Ideal& i) {
  AlgebraPtr alg = algebra_of(i.ring());
  Subgroup s = subgroup(alg->group, i.lattice());
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    Matrix a(s.group.ngens(), s.group.ngens());
    for (std::size_t r = 0; r < s.inclusion.rows(); ++r) {
      auto c = subgroup_coords(alg->group, s, alg->mul(s.inclusion.row(r), alg->basis(l)));
      if (!c) fail(ErrorKind::InvalidArgument, "lattice is not a right ideal");
      a.set_row(r, *c);
    }
    actions.push_back(std::move(a));
  }
  return {Module(alg, Side::Right, s.group, std::move(actions)), s.inclusion};
}

Matrix submodule_span(const Module& m, const Matrix& gens) {
  Matrix out(0, m.ngens());
  for (std::size_t r = 0; r < gens.rows(); ++r) {
    Vec g = m.group().reduce(gens.row(r));
    out.append_row(g);
    for (const auto& a : m.actions()) out.append_row(m.group().reduce(g * a));
  }
  return out;
}

SubmoduleResult submodule(const Module& m, const Matrix& gens) {
  Matrix span = submodule_span(m, gens);
  Subgroup s = subgroup(m.group(), span);
  std::vector<Matrix> actions;
  for (const auto& a : m.actions()) {
    Matrix b(s.group.ngens(), s.group.ngens());
    for (std::size_t r = 0; r < s.inclusion.rows(); ++r) {
      auto c = subgroup_coords(m.group(), s, s.inclusion.row(r) * a);
      if (!c) fail(ErrorKind::InvalidArgument, "span is not closed under the action");
      b.set_row(r, *c);
    }
    actions.push_back(std::move(b));
  }
  Matrix inc = rows_or_empty(s.inclusion, m.ngens());
  return {Module(m.algebra(), m.side(), s.group, std::move(actions)), inc};
}

QuotientModule quotient_module(const Module& m, const Matrix& gens) {
  Matrix span = submodule_span(m, gens);
  Quotient q = quotient(m.group(), span);
  std::vector<Matrix> actions;
  for (const auto& a : m.actions()) actions.push_back(q.lift * a * q.projection);
  Module out(m.algebra(), m.side(), q.group, std::move(actions));
  return {std::move(out), q.projection, rows_or_empty(q.lift, m.ngens())};
}

DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "direct sum of no modules");
  const AlgebraPtr& alg = parts.front().algebra();
  std::vector<AbelianGroup> groups;
  for (const auto& p : parts) {
    if (p.algebra() != alg || p.side() != parts.front().side()) fail(ErrorKind::HandleMismatch, "summands over different rings");
    groups.push_back(p.group());
  }
  AbelianGroup g(concat_moduli(groups));
  std::vector<Matrix> actions;
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.actions()[l]);
    Matrix a = block_diag_all(blocks);
    if (a.rows() != g.ngens()) a = Matrix(g.ngens(), g.ngens());
    actions.push_back(std::move(a));
  }
  DirectSum out{Module(alg, parts.front().side(), g, std::move(actions)), {}, {}};
  std::size_t offset = 0;
  for (const auto& p : parts) {
    Matrix inj(p.ngens(), g.ngens());
    Matrix proj(g.ngens(), p.ngens());
    for (std::size_t i = 0; i < p.ngens(); ++i) {
      inj(i, offset + i) = 1;
      proj(offset + i, i) = 1;
    }
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(proj));
    offset += p.ngens();
  }
  return out;
}

bool is_module_map(const Module& source, const Module& target, const Matrix& f) {
  if (source.algebra() != target.algebra()) return false;
  if (f.rows() != source.ngens() || f.cols() != target.ngens()) return false;
  if (!is_homomorphism(source.group(), target.group(), f)) return false;
  if (source.ngens() == 0 || target.ngens() == 0) return true;
  for (std::size_t l = 0; l < source.actions().size(); ++l)
    if (!maps_equal(target.group(), source.actions()[l] * f, f * target.actions()[l])) return false;
  return true;
}

Matrix identity_map(const Module& m) { return Matrix::identity(m.ngens()); }

Matrix compose(const Module& target, const Matrix& first, const Matrix& second) {
  if (first.cols() != second.rows()) fail(ErrorKind::CompositionMismatch, "maps do not compose");
  if (first.rows() == 0 || second.cols() == 0) return Matrix(first.rows(), second.cols());
  return target.group().reduce_rows(first * second);
}

KernelResult module_kernel(const Module& source, const Module& target, const Matrix& f) {
  Matrix k = target.ngens() == 0 ? Matrix::identity(source.ngens()) : kernel_gens(source.group(), target.group(), f);
  auto s = submodule(source, rows_or_empty(k, source.ngens()));
  return {std::move(s.module), std::move(s.inclusion)};
}

QuotientModule module_cokernel(const Module& source, const Module& target, const Matrix& f) {
  (void)source;
  return quotient_module(target, rows_or_empty(f, target.ngens()));
}

SubmoduleResult module_image(const Module& source, const Module& target, const Matrix& f) {
  (void)source;
  return submodule(target, rows_or_empty(f, target.ngens()));
}

Matrix HomSpace::map_of(const Vec& coords) const {
  const std::size_t k = source.ngens();
  const std::size_t kn = target.ngens();
  Matrix f(k, kn);
  if (coords.empty() || k == 0 || kn == 0) return f;
  Vec flat = ambient.reduce(coords * sub.inclusion);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < kn; ++c) f(i, c) = flat[i * kn + c];
  return f;
}

Vec HomSpace::coords_of(const Matrix& f) const {
  Vec flat;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    Vec r = f.row(i);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  auto c = subgroup_coords(ambient, sub, flat);
  if (!c) fail(ErrorKind::NotAMorphism, "matrix is not a module homomorphism");
  return *c;
}

HomSpace hom(const Module& m, const Module& n) {
  if (m.algebra() != n.algebra()) fail(ErrorKind::HandleMismatch, "modules over different rings");
  if (m.side() != n.side()) fail(ErrorKind::HandleMismatch, "Hom needs modules on the same side");
  const AlgebraPtr& alg = m.algebra();
  const std::size_t k = m.ngens();
  const std::size_t kn = n.ngens();
  const std::size_t dim = alg->dim();
  AbelianGroup ambient(concat_moduli(std::vector<AbelianGroup>(k, n.group())));
  AbelianGroup eqs(concat_moduli(std::vector<AbelianGroup>(k + k * dim, n.group())));
  Matrix phi(k * kn, (k + k * dim) * kn);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < kn; ++c) phi(i * kn + c, i * kn + c) = m.group().moduli()[i];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < dim; ++l) {
      const std::size_t block = (k + i * dim + l) * kn;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < kn; ++c) phi(j * kn + c, block + c) += m.actions()[l](i, j);
      for (std::size_t c = 0; c < kn; ++c)
        for (std::size_t c2 = 0; c2 < kn; ++c2) phi(i * kn + c, block + c2) -= n.actions()[l](c, c2);
    }
  Matrix kernel = (k == 0 || kn == 0) ? Matrix(0, k * kn) : kernel_gens(ambient, eqs, phi);
  Subgroup sub = subgroup(ambient, rows_or_empty(kernel, k * kn));
  HomSpace h{m, n, ambient, sub, Module()};
  const std::size_t hs = sub.group.ngens();
  if (alg->commutative) {
    std::vector<Matrix> actions;
    for (std::size_t l = 0; l < dim; ++l) {
      Matrix a(hs, hs);
      if (hs) {
        Matrix amb = block_diag_all(std::vector<Matrix>(k, n.actions()[l]));
        for (std::size_t r = 0; r < hs; ++r) {
          auto c = subgroup_coords(ambient, sub, sub.inclusion.row(r) * amb);
          if (!c) fail(ErrorKind::InvalidArgument, "Hom is not closed under the action");
          a.set_row(r, *c);
        }
      }
      actions.push_back(std::move(a));
    }
    h.module = Module(alg, m.side(), sub.group, std::move(actions));
  } else {
    h.module = Module(integers_algebra(), Side::Right, sub.group, {Matrix::identity(hs)});
  }
  return h;
}

Vec TensorProduct::pure(const Vec& m, const Vec& n) const {
  const std::size_t kn = right_factor.ngens();
  Vec raw(left_factor.ngens() * kn);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < kn; ++j) raw[i * kn + j] = m[i] * n[j];
  if (module.ngens() == 0) return {};
  return module.group().reduce(raw * presented.to_canon);
}

TensorProduct tensor(const Module& m, const Module& n) {
  if (m.algebra() != n.algebra()) fail(ErrorKind::HandleMismatch, "modules over different rings");
  const AlgebraPtr& alg = m.algebra();
  if (!alg->commutative && (m.side() != Side::Right || n.side() != Side::Left))
    fail(ErrorKind::HandleMismatch, "tensor product needs a right module and a left module");
  const std::size_t k = m.ngens();
  const std::size_t kn = n.ngens();
  const std::size_t raw = k * kn;
  Matrix rel(0, raw);
  auto idx = [kn](std::size_t i, std::size_t j) { return i * kn + j; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < kn; ++j) {
      const Integer g = gcd(m.group().moduli()[i], n.group().moduli()[j]);
      if (g != 0) {
        Vec v(raw);
        v[idx(i, j)] = g;
        rel.append_row(v);
      }
      for (std::size_t l = 0; l < alg->dim(); ++l) {
        Vec v(raw);
        for (std::size_t i2 = 0; i2 < k; ++i2) v[idx(i2, j)] += m.actions()[l](i, i2);
        for (std::size_t j2 = 0; j2 < kn; ++j2) v[idx(i, j2)] -= n.actions()[l](j, j2);
        rel.append_row(v);
      }
    }
  Presented p = present(raw, rel);
  TensorProduct t{m, n, p, Module()};
  const std::size_t ts = p.group.ngens();
  if (alg->commutative) {
    std::vector<Matrix> actions;
    for (std::size_t l = 0; l < alg->dim(); ++l) {
      Matrix a(raw, raw);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t i2 = 0; i2 < k; ++i2)
          for (std::size_t j = 0; j < kn; ++j) a(idx(i, j), idx(i2, j)) = m.actions()[l](i, i2);
      actions.push_back(ts ? p.to_raw * a * p.to_canon : Matrix(0, 0));
    }
    t.module = Module(alg, n.side(), p.group, std::move(actions));
  } else {
    t.module = Module(integers_algebra(), Side::Right, p.group, {Matrix::identity(ts)});
  }
  return t;
}

Module char_dual(const Module& n) {
  if (!n.finite()) fail(ErrorKind::InfiniteDual, "character dual of an infinite module");
  const auto& d = n.group().moduli();
  const std::size_t k = n.ngens();
  std::vector<Matrix> actions;
  for (const auto& a : n.actions()) {
    Matrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(j, i) = d[i] * a(i, j) / d[j];
    actions.push_back(std::move(b));
  }
  return Module(n.algebra(), opposite(n.side()), n.group(), std::move(actions));
}

Rational pair_character(const AbelianGroup& g, const Vec& k, const Vec& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.ngens(); ++i) s += Rational(k[i] * x[i]) / Rational(g.moduli()[i]);
  Integer num = numerator(s);
  Integer den = denominator(s);
  return Rational(mod(num, den)) / Rational(den);
}

Module free_module(const FreeComplex& c, std::size_t n) {
  return Module::free(c.alg, c.side, n < c.ranks.size() ? c.ranks[n] : 0);
}

Matrix free_map_matrix(const AlgebraPtr& alg, Side side, std::size_t rank, const Module& target, const Matrix& images) {
  const std::size_t dim = alg->dim();
  Matrix out(rank * dim, target.ngens());
  if (target.ngens() == 0) return out;
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t l = 0; l < dim; ++l) out.set_row(j * dim + l, target.act(images.row(j), alg->basis(l)));
  (void)side;
  return out;
}

namespace {

// Greedy choice of R-module generators among the given rows.
Matrix choose_generators(const Module& m, const Matrix& candidates) {
  Matrix chosen(0, m.ngens());
  Matrix span(0, m.ngens());
  for (std::size_t r = 0; r < candidates.rows(); ++r) {
    Vec v = m.group().reduce(candidates.row(r));
    if (is_zero(v) || in_subgroup(m.group(), span, v)) continue;
    chosen.append_row(v);
    Matrix one(0, m.ngens());
    one.append_row(v);
    span = Matrix::vstack(span, submodule_span(m, one));
  }
  return chosen;
}

}  // namespace

Resolution resolve(const Module& m, std::size_t length, std::size_t size_budget) {
  const AlgebraPtr& alg = m.algebra();
  const std::size_t dim = alg->dim();
  Resolution res{m, FreeComplex{alg, m.side(), {}, {}}, Matrix()};
  Matrix gens = choose_generators(m, Matrix::identity(m.ngens()));
  res.augmentation = gens;
  res.complex.ranks.push_back(gens.rows());
  Module target = m;
  Matrix images = gens;
  for (std::size_t n = 0;; ++n) {
    const std::size_t rank = res.complex.ranks[n];
    if (rank * dim > size_budget) fail(ErrorKind::BudgetExceeded, "free resolution exceeds the size budget");
    Module f = Module::free(alg, m.side(), rank);
    if (n == length) break;
    Matrix z = free_map_matrix(alg, m.side(), rank, target, images);
    Matrix k = (target.ngens() == 0 || rank == 0) ? Matrix::identity(f.ngens()) : kernel_gens(f.group(), target.group(), z);
    Matrix next = choose_generators(f, rows_or_empty(k, f.ngens()));
    res.complex.d.push_back(next);
    res.complex.ranks.push_back(next.rows());
    target = f;
    images = next;
  }
  return res;
}

AbelianGroup cochain_group(const FreeComplex& c, const Module& n, std::size_t degree) {
  const std::size_t r = degree < c.ranks.size() ? c.ranks[degree] : 0;
  return AbelianGroup(concat_moduli(std::vector<AbelianGroup>(r, n.group())));
}

Matrix cochain_map(const FreeComplex& c, const Module& n, std::size_t degree) {
  if (degree >= c.d.size()) fail(ErrorKind::InvalidArgument, "complex is too short for this degree");
  const std::size_t dim = c.alg->dim();
  const std::size_t kn = n.ngens();
  const std::size_t r0 = c.ranks[degree];
  const std::size_t r1 = c.ranks[degree + 1];
  Matrix out(r0 * kn, r1 * kn);
  if (kn == 0) return out;
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r0; ++j) {
      Vec r(dim);
      for (std::size_t l = 0; l < dim; ++l) r[l] = c.d[degree](i, j * dim + l);
      Matrix a = n.action(r);
      for (std::size_t x = 0; x < kn; ++x)
        for (std::size_t y = 0; y < kn; ++y) out(j * kn + x, i * kn + y) = a(x, y);
    }
  return out;
}

Cohomology hom_cohomology(const FreeComplex& c, const Module& n, std::size_t degree) {
  AbelianGroup cn = cochain_group(c, n, degree);
  AbelianGroup cnext = cochain_group(c, n, degree + 1);
  Matrix d_out = cochain_map(c, n, degree);
  Matrix z = (cn.ngens() == 0) ? Matrix(0, 0)
             : cnext.ngens() == 0 ? Matrix::identity(cn.ngens())
                                  : kernel_gens(cn, cnext, d_out);
  Matrix d_in = degree == 0 ? Matrix(0, cn.ngens()) : cochain_map(c, n, degree - 1);
  Matrix b = degree == 0 ? Matrix(0, cn.ngens()) : d_in;
  Subquotient h = subquotient(cn, rows_or_empty(z, cn.ngens()), rows_or_empty(b, cn.ngens()));
  return {cn, std::move(h), std::move(d_out), std::move(d_in)};
}

AbelianGroup ext(const Module& m, const Module& n, std::size_t degree) {
  if (m.algebra() != n.algebra() || m.side() != n.side()) fail(ErrorKind::HandleMismatch, "Ext needs modules over one ring on one side");
  Resolution r = resolve(m, degree + 1);
  return hom_cohomology(r.complex, n, degree).h.group;
}

std::vector<Matrix> lift_chain_map(const Resolution& p, const Resolution& q, const Matrix& f, std::size_t length) {
  const AlgebraPtr& alg = p.complex.alg;
  const Side side = p.complex.side;
  const std::size_t dim = alg->dim();
  std::vector<Matrix> out;
  const std::size_t rq0 = q.complex.ranks[0];
  Matrix eq = free_map_matrix(alg, side, rq0, q.module, q.augmentation);
  Matrix f0(p.complex.ranks[0], rq0 * dim);
  for (std::size_t i = 0; i < p.complex.ranks[0]; ++i) {
    Vec y = q.module.ngens() ? q.module.group().reduce(p.augmentation.row(i) * f) : Vec{};
    auto c = q.module.ngens() ? express(q.module.group(), eq, y) : std::optional<Vec>(zero_vec(rq0 * dim));
    if (!c) fail(ErrorKind::InvalidArgument, "augmentation is not surjective");
    f0.set_row(i, *c);
  }
  out.push_back(std::move(f0));
  for (std::size_t n = 1; n <= length; ++n) {
    if (n > p.complex.d.size() || n > q.complex.d.size()) fail(ErrorKind::InvalidArgument, "resolutions are too short");
    const std::size_t rp = p.complex.ranks[n];
    const std::size_t rq = q.complex.ranks[n];
    Module qprev = Module::free(alg, side, q.complex.ranks[n - 1]);
    Matrix fz = free_map_matrix(alg, side, p.complex.ranks[n - 1], qprev, out[n - 1]);
    Matrix dq = free_map_matrix(alg, side, rq, qprev, q.complex.d[n - 1]);
    Matrix fn(rp, rq * dim);
    for (std::size_t i = 0; i < rp; ++i) {
      if (qprev.ngens() == 0) break;
      Vec w = qprev.group().reduce(p.complex.d[n - 1].row(i) * fz);
      auto c = rq ? express(qprev.group(), dq, w) : (is_zero(w) ? std::optional<Vec>(Vec{}) : std::nullopt);
      if (!c) fail(ErrorKind::InvalidArgument, "chain map does not lift");
      if (rq) fn.set_row(i, *c);
    }
    out.push_back(std::move(fn));
  }
  return out;
}

Matrix pullback_cochains(const AlgebraPtr& alg, const Module& n, std::size_t target_rank, const Matrix& generator_images) {
  const std::size_t dim = alg->dim();
  const std::size_t kn = n.ngens();
  const std::size_t rp = generator_images.rows();
  Matrix out(target_rank * kn, rp * kn);
  if (kn == 0) return out;
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t j = 0; j < target_rank; ++j) {
      Vec r(dim);
      for (std::size_t l = 0; l < dim; ++l) r[l] = generator_images(i, j * dim + l);
      Matrix a = n.action(r);
      for (std::size_t x = 0; x < kn; ++x)
        for (std::size_t y = 0; y < kn; ++y) out(j * kn + x, i * kn + y) = a(x, y);
    }
  return out;
}

Matrix induced_on_cohomology(const Cohomology& from, const Cohomology& to, const Matrix& cochain_map) {
  const std::size_t a = from.h.group.ngens();
  const std::size_t b = to.h.group.ngens();
  Matrix out(a, b);
  if (b == 0) return out;
  for (std::size_t g = 0; g < a; ++g) {
    Vec rep = from.h.lift.row(g);
    Vec img = to.cochains.reduce(rep * cochain_map);
    out.set_row(g, class_of(to.cochains, to.h, img));
  }
  return out;
}

bool isomorphic_groups(const AbelianGroup& a, const AbelianGroup& b) {
  return direct_sum(a, AbelianGroup()) == direct_sum(b, AbelianGroup());
}

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

// Invariant factors of a polynomial matrix by Euclidean elimination.
std::vector<Poly> poly_smith(PolyMatrix a, std::size_t cols, const Integer& p) {
  using namespace polyops;
  const std::size_t rows = a.size();
  std::vector<Poly> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t br = rows, bc = cols;
    int best = -1;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (!a[i][j].empty() && (best < 0 || degree(a[i][j]) < best)) {
          best = degree(a[i][j]);
          br = i;
          bc = j;
        }
    if (best < 0) break;
    std::swap(a[t], a[br]);
    for (auto& row : a) std::swap(row[t], row[bc]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t].empty()) continue;
      Poly q = divmod(a[i][t], a[t][t], p).first;
      for (std::size_t j = t; j < cols; ++j) a[i][j] = sub(a[i][j], mul(q, a[t][j], p), p);
      if (!a[i][t].empty()) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j].empty()) continue;
      Poly q = divmod(a[t][j], a[t][t], p).first;
      for (std::size_t i = t; i < rows; ++i) a[i][j] = sub(a[i][j], mul(q, a[i][t], p), p);
      if (!a[t][j].empty()) clean = false;
    }
    if (!clean) continue;
    diag.push_back(monic(a[t][t], p));
    ++t;
  }
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Poly g = gcd(diag[i], diag[j], p);
      Poly l = divmod(mul(diag[i], diag[j], p), g, p).first;
      diag[i] = g;
      diag[j] = monic(l, p);
    }
  return diag;
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

NormalForm group_normal_form(const Module& m) {
  NormalForm nf;
  nf.free_rank = m.group().free_rank();
  nf.invariants = direct_sum(m.group(), AbelianGroup()).torsion();
  if (m.finite()) nf.size = m.group().order();
  return nf;
}

}  // namespace

std::string NormalForm::to_string() const {
  std::ostringstream out;
  out << "free rank " << free_rank;
  if (!invariants.empty()) {
    out << ", invariants (";
    for (std::size_t i = 0; i < invariants.size(); ++i) out << (i ? "," : "") << invariants[i];
    out << ")";
  }
  if (!poly_invariants.empty()) {
    out << ", invariant factors (";
    for (std::size_t i = 0; i < poly_invariants.size(); ++i) out << (i ? "," : "") << poly_invariants[i];
    out << ")";
  }
  if (size) out << ", size " << *size;
  return out.str();
}

NormalForm normal_form(const FPModule& m) {
  switch (m.ring.cls()) {
    case RingClass::UnivariatePoly: {
      PolyMatrix a;
      for (const auto& row : m.relations) {
        if (row.size() != m.generators) fail(ErrorKind::InvalidArgument, "relation row has the wrong length");
        std::vector<Poly> r;
        for (const auto& e : row) {
          if (!(e.ring() == m.ring)) fail(ErrorKind::HandleMismatch, "relation entry from another ring");
          r.push_back(e.poly());
        }
        a.push_back(std::move(r));
      }
      NormalForm nf;
      auto diag = poly_smith(std::move(a), m.generators, m.ring.param());
      nf.free_rank = m.generators - diag.size();
      for (const auto& d : diag)
        if (polyops::degree(d) > 0) nf.poly_invariants.push_back(polyops::to_string(d));
      return nf;
    }
    case RingClass::QuadraticOrder: {
      std::vector<std::vector<Element>> per_gen(m.generators);
      for (const auto& row : m.relations) {
        std::size_t nonzero = 0, at = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
          if (!row[j].is_zero()) {
            ++nonzero;
            at = j;
          }
        if (nonzero > 1)
          fail(ErrorKind::UnsupportedPresentation, "relation mixes generators over a quadratic order");
        if (nonzero == 1) per_gen[at].push_back(row[at]);
      }
      NormalForm nf;
      for (auto& rels : per_gen) {
        if (rels.empty()) {
          ++nf.free_rank;
          continue;
        }
        if (rels.size() > 1) fail(ErrorKind::UnsupportedPresentation, "generator with a non-principal relation ideal");
        Ideal i = Ideal::principal(rels.front());
        if (!i.is_unit()) nf.poly_invariants.push_back(i.to_string());
      }
      std::sort(nf.poly_invariants.begin(), nf.poly_invariants.end());
      Realized r = realize(m);
      if (r.module.finite()) nf.size = r.module.group().order();
      return nf;
    }
    case RingClass::Integers:
    case RingClass::IntegersMod: {
      Realized r = realize(m);
      NormalForm nf = group_normal_form(r.module);
      if (nf.size)
        for (const auto& e : direct_sum(r.module.group(), AbelianGroup()).elements()) nf.elements.push_back(vec_string(e));
      return nf;
    }
    case RingClass::UpperTriangular2: {
      Realized r = realize(m);
      NormalForm nf = group_normal_form(r.module);
      for (const auto& e : enumerate(m.ring)) {
        Matrix a = r.module.action(e.coords());
        Integer img = subgroup(r.module.group(), a).group.order();
        Integer ker = *nf.size / img;
        nf.profile.emplace_back(e.to_string(), gabriel::to_string(img) + "/" + gabriel::to_string(ker));
      }
      for (const auto& e : direct_sum(r.module.group(), AbelianGroup()).elements()) nf.elements.push_back(vec_string(e));
      return nf;
    }
  }
  return {};
}

}  // namespace gabriel
