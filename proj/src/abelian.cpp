#include "gabriel/abelian.hpp"

#include "gabriel/errors.hpp"

#include <sstream>

namespace gabriel {

AbelianGroup::AbelianGroup(std::vector<Integer> moduli) : moduli_(std::move(moduli)) {
  for (const auto& d : moduli_)
    if (d < 0 || d == 1) fail(ErrorKind::InvalidArgument, "group modulus must be 0 or at least 2");
}

AbelianGroup AbelianGroup::free(std::size_t rank) { return AbelianGroup(std::vector<Integer>(rank, Integer(0))); }

AbelianGroup AbelianGroup::cyclic(const Integer& n) {
  if (n == 1) return AbelianGroup();
  return AbelianGroup({n});
}

std::size_t AbelianGroup::free_rank() const {
  std::size_t r = 0;
  for (const auto& d : moduli_)
    if (d == 0) ++r;
  return r;
}

std::vector<Integer> AbelianGroup::torsion() const {
  std::vector<Integer> t;
  for (const auto& d : moduli_)
    if (d != 0) t.push_back(d);
  return t;
}

Integer AbelianGroup::order() const {
  if (!finite()) fail(ErrorKind::InvalidArgument, "order of an infinite group");
  Integer n = 1;
  for (const auto& d : moduli_) n *= d;
  return n;
}

Integer AbelianGroup::exponent() const {
  if (!finite()) fail(ErrorKind::InvalidArgument, "exponent of an infinite group");
  Integer e = 1;
  for (const auto& d : moduli_) e = lcm(e, d);
  return e;
}

Vec AbelianGroup::reduce(Vec v) const {
  if (v.size() != moduli_.size()) fail(ErrorKind::InvalidArgument, "element length does not match group");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], moduli_[i]);
  return v;
}

Matrix AbelianGroup::reduce_rows(Matrix m) const {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = mod(m(r, c), moduli_[c]);
  return m;
}

Vec AbelianGroup::unit(std::size_t i) const {
  Vec v = zero();
  v[i] = 1;
  return v;
}

Matrix AbelianGroup::relations() const {
  Matrix m(0, ngens());
  for (std::size_t i = 0; i < ngens(); ++i) {
    if (moduli_[i] == 0) continue;
    Vec v = zero();
    v[i] = moduli_[i];
    m.append_row(v);
  }
  return m;
}

std::vector<Vec> AbelianGroup::elements() const {
  if (!finite()) fail(ErrorKind::InvalidArgument, "cannot enumerate an infinite group");
  std::vector<Vec> out;
  Vec cur = zero();
  const auto total = order().convert_to<std::size_t>();
  out.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    out.push_back(cur);
    for (std::size_t i = ngens(); i-- > 0;) {
      cur[i] += 1;
      if (cur[i] < moduli_[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

std::size_t AbelianGroup::index_of(const Vec& v) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < ngens(); ++i) idx = idx * moduli_[i].convert_to<std::size_t>() + v[i].convert_to<std::size_t>();
  return idx;
}

Integer AbelianGroup::count_killed_by(const Integer& m) const {
  Integer n = 1;
  for (const auto& d : moduli_) n *= (d == 0 ? Integer(m == 0 ? 0 : 1) : gcd(m, d));
  return n;
}

std::string AbelianGroup::to_string() const {
  if (moduli_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out << " + ";
    if (moduli_[i] == 0)
      out << "Z";
    else
      out << "Z/" << moduli_[i];
  }
  return out.str();
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> m = a.moduli();
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  // Canonicalize through a presentation so invariants come out in divisibility order.
  Matrix rel(0, m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    Vec v = zero_vec(m.size());
    v[i] = m[i];
    rel.append_row(v);
  }
  return present(m.size(), rel).group;
}

AbelianGroup power(const AbelianGroup& a, std::size_t k) {
  std::vector<Integer> m;
  for (std::size_t i = 0; i < k; ++i) m.insert(m.end(), a.moduli().begin(), a.moduli().end());
  return AbelianGroup(std::move(m));
}

Presented present(std::size_t n_raw, const Matrix& relations) {
  if (relations.rows() == 0) return {AbelianGroup::free(n_raw), Matrix::identity(n_raw), Matrix::identity(n_raw)};
  if (relations.cols() != n_raw) fail(ErrorKind::InvalidArgument, "relation width does not match generator count");
  SmithForm s = smith(relations);
  std::vector<Integer> moduli;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n_raw; ++i) {
    Integer d = i < s.rank ? s.diag[i] : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    moduli.push_back(d);
  }
  Presented p{AbelianGroup(std::move(moduli)), s.Q.select_cols(keep), s.Qinv.select_rows(keep)};
  return p;
}

namespace {

Matrix stack_relations(const Matrix& gens, const AbelianGroup& g) {
  Matrix top = gens;
  if (top.rows() == 0) top = Matrix(0, g.ngens());
  return Matrix::vstack(top, g.relations());
}

}  // namespace

Subgroup subgroup(const AbelianGroup& g, const Matrix& gens_in) {
  Matrix gens = gens_in.rows() == 0 ? Matrix(0, g.ngens()) : g.reduce_rows(gens_in);
  const std::size_t h = gens.rows();
  if (h == 0) return {AbelianGroup(), Matrix(0, g.ngens()), gens, Matrix(0, 0)};
  Matrix k = left_kernel(stack_relations(gens, g));
  Matrix rel = k.col_range(0, h);
  Presented p = present(h, rel);
  Matrix inc = g.reduce_rows(p.to_raw * gens);
  return {p.group, inc, gens, p.to_canon};
}

std::optional<Vec> express(const AbelianGroup& g, const Matrix& gens, const Vec& v) {
  const std::size_t h = gens.rows();
  auto x = solve_left(stack_relations(gens, g), g.reduce(v));
  if (!x) return std::nullopt;
  return Vec(x->begin(), x->begin() + static_cast<long>(h));
}

std::optional<Vec> subgroup_coords(const AbelianGroup& g, const Subgroup& s, const Vec& v) {
  if (s.gens.rows() == 0) {
    if (is_zero(g.reduce(v))) return Vec{};
    return std::nullopt;
  }
  auto c = express(g, s.gens, v);
  if (!c) return std::nullopt;
  return s.group.reduce(*c * s.to_canon);
}

Quotient quotient(const AbelianGroup& g, const Matrix& gens) {
  Matrix rel = stack_relations(gens.rows() == 0 ? Matrix(0, g.ngens()) : gens, g);
  Presented p = present(g.ngens(), rel);
  return {p.group, p.to_canon, p.to_raw};
}

Matrix kernel_gens(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f) {
  return preimage_gens(a, b, f, Matrix(0, b.ngens()));
}

Matrix preimage_gens(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f, const Matrix& target_gens) {
  if (a.ngens() == 0) return Matrix(0, 0);
  Matrix stacked = Matrix::vstack(f, stack_relations(target_gens, b));
  if (stacked.cols() == 0) {
    Matrix id = Matrix::identity(a.ngens());
    return id;
  }
  Matrix k = left_kernel(stacked);
  Matrix out(0, a.ngens());
  for (std::size_t r = 0; r < k.rows(); ++r) {
    Vec row = k.row(r);
    Vec v = a.reduce(Vec(row.begin(), row.begin() + static_cast<long>(a.ngens())));
    if (!is_zero(v)) out.append_row(v);
  }
  return out;
}

bool in_subgroup(const AbelianGroup& g, const Matrix& gens, const Vec& v) {
  if (gens.rows() == 0) return is_zero(g.reduce(v));
  return express(g, gens, v).has_value();
}

bool subgroup_contains(const AbelianGroup& g, const Matrix& big, const Matrix& small) {
  for (std::size_t r = 0; r < small.rows(); ++r)
    if (!in_subgroup(g, big, small.row(r))) return false;
  return true;
}

bool same_subgroup(const AbelianGroup& g, const Matrix& a, const Matrix& b) {
  return subgroup_contains(g, a, b) && subgroup_contains(g, b, a);
}

bool is_injective(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f) {
  return kernel_gens(a, b, f).rows() == 0;
}

bool is_surjective(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f) {
  Matrix img = a.ngens() == 0 ? Matrix(0, b.ngens()) : f;
  for (std::size_t i = 0; i < b.ngens(); ++i)
    if (!in_subgroup(b, img, b.unit(i))) return false;
  return true;
}

bool is_homomorphism(const AbelianGroup& a, const AbelianGroup& b, const Matrix& f) {
  if (f.rows() != a.ngens() || f.cols() != b.ngens()) return false;
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    if (a.moduli()[i] == 0) continue;
    if (!is_zero(b.reduce(a.moduli()[i] * f.row(i)))) return false;
  }
  return true;
}

bool is_zero_map(const AbelianGroup& b, const Matrix& f) { return b.reduce_rows(f).is_zero(); }

bool maps_equal(const AbelianGroup& b, const Matrix& f, const Matrix& g) {
  return f.rows() == g.rows() && b.reduce_rows(f) == b.reduce_rows(g);
}

Subquotient subquotient(const AbelianGroup& g, const Matrix& z_gens, const Matrix& b_gens) {
  Subgroup z = subgroup(g, z_gens);
  Matrix b_in_z(0, z.group.ngens());
  for (std::size_t r = 0; r < b_gens.rows(); ++r) {
    auto c = subgroup_coords(g, z, b_gens.row(r));
    if (!c) fail(ErrorKind::InvalidArgument, "boundary not contained in cycles");
    b_in_z.append_row(*c);
  }
  Quotient q = quotient(z.group, b_in_z);
  Matrix lift = q.lift.rows() == 0 ? Matrix(0, g.ngens()) : g.reduce_rows(q.lift * z.inclusion);
  return {q.group, std::move(z), std::move(q), std::move(lift)};
}

Vec class_of(const AbelianGroup& g, const Subquotient& h, const Vec& v) {
  auto c = subgroup_coords(g, h.z, v);
  if (!c) fail(ErrorKind::InvalidArgument, "element is not a cycle");
  if (h.group.ngens() == 0) return Vec{};
  return h.group.reduce(*c * h.q.projection);
}

}  // namespace gabriel
