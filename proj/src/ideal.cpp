#include "gabriel/ideal.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <set>

namespace gabriel {

namespace {

void check_handle(const Ring& a, const Ring& b) {
  if (!(a == b)) fail(ErrorKind::HandleMismatch, a.to_string() + " vs " + b.to_string());
}

std::vector<Element> lattice_elements(const Ring& r, const Matrix& rows) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < rows.rows(); ++i) out.emplace_back(r, rows.row(i));
  return out;
}

}  // namespace

Matrix right_ideal_rows(const Ring& r, const std::vector<Element>& gens) {
  auto alg = algebra_of(r);
  Matrix rows(0, alg->dim());
  for (const auto& g : gens) {
    check_handle(r, g.ring());
    for (std::size_t l = 0; l < alg->dim(); ++l) rows.append_row(alg->mul(g.coords(), alg->basis(l)));
  }
  return Matrix::vstack(rows, alg->group.relations());
}

Ideal::Ideal(const Ring& r, std::vector<Element> gens) : ring_(r), gens_(std::move(gens)) {
  if (gens_.empty()) fail(ErrorKind::EmptyGenerators, "an ideal needs at least one generator");
  for (const auto& g : gens_) check_handle(ring_, g.ring());
  canonicalize();
}

Ideal Ideal::zero(const Ring& r) { return Ideal(r, {Element::zero(r)}); }
Ideal Ideal::unit(const Ring& r) { return Ideal(r, {Element::one(r)}); }
Ideal Ideal::principal(const Element& g) { return Ideal(g.ring(), {g}); }

Ideal Ideal::from_lattice(const Ring& r, const Matrix& rows) {
  auto alg = algebra_of(r);
  Matrix full = Matrix::vstack(rows.rows() == 0 ? Matrix(0, alg->dim()) : rows, alg->group.relations());
  Matrix h = hermite_rows(full);
  std::vector<Element> gens = lattice_elements(r, h);
  if (gens.empty()) gens.push_back(Element::zero(r));
  Ideal out(r, std::move(gens));
  return out;
}

void Ideal::canonicalize() {
  if (ring_.cls() == RingClass::UnivariatePoly) {
    Poly g;
    for (const auto& e : gens_) g = polyops::gcd(g, e.poly(), ring_.param());
    poly_ = g;
    return;
  }
  lattice_ = hermite_rows(right_ideal_rows(ring_, gens_));
}

std::vector<Element> Ideal::canonical_generators() const {
  switch (ring_.cls()) {
    case RingClass::UnivariatePoly: return {Element(ring_, poly_)};
    case RingClass::Integers:
    case RingClass::IntegersMod:
      if (lattice_.rows() == 0) return {Element::zero(ring_)};
      return {Element(ring_, Vec{lattice_(0, 0)})};
    default: {
      auto out = lattice_elements(ring_, lattice_);
      std::vector<Element> nonzero;
      for (auto& e : out)
        if (!e.is_zero()) nonzero.push_back(e);
      if (nonzero.empty()) nonzero.push_back(Element::zero(ring_));
      return nonzero;
    }
  }
}

const Matrix& Ideal::lattice() const {
  if (!ring_.lattice_backed()) fail(ErrorKind::UnsupportedPresentation, "polynomial ideals have no lattice");
  return lattice_;
}

const Poly& Ideal::poly_generator() const {
  if (ring_.lattice_backed()) fail(ErrorKind::InvalidArgument, "not a polynomial ideal");
  return poly_;
}

bool Ideal::contains(const Element& e) const {
  check_handle(ring_, e.ring());
  if (ring_.cls() == RingClass::UnivariatePoly) {
    if (poly_.empty()) return e.is_zero();
    return polyops::divmod(e.poly(), poly_, ring_.param()).second.empty();
  }
  if (lattice_.rows() == 0) return gabriel::is_zero(e.coords());
  return solve_left(lattice_, e.coords()).has_value();
}

bool Ideal::contains(const Ideal& other) const {
  check_handle(ring_, other.ring_);
  if (ring_.cls() == RingClass::UnivariatePoly) return contains(Element(ring_, other.poly_));
  for (std::size_t i = 0; i < other.lattice_.rows(); ++i)
    if (!contains(Element(ring_, other.lattice_.row(i)))) return false;
  return true;
}

bool Ideal::is_zero() const {
  if (ring_.cls() == RingClass::UnivariatePoly) return poly_.empty();
  auto alg = algebra_of(ring_);
  for (std::size_t i = 0; i < lattice_.rows(); ++i)
    if (!gabriel::is_zero(alg->group.reduce(lattice_.row(i)))) return false;
  return true;
}

bool Ideal::is_unit() const { return contains(Element::one(ring_)); }

bool Ideal::is_two_sided() const {
  if (ring_.commutative()) return true;
  auto alg = algebra_of(ring_);
  for (std::size_t i = 0; i < lattice_.rows(); ++i)
    for (std::size_t l = 0; l < alg->dim(); ++l)
      if (!contains(Element(ring_, alg->mul(alg->basis(l), lattice_.row(i))))) return false;
  return true;
}

std::optional<Integer> Ideal::index() const {
  if (ring_.cls() == RingClass::UnivariatePoly) {
    if (poly_.empty()) return std::nullopt;
    if (ring_.param() == 0) return polyops::degree(poly_) == 0 ? std::optional<Integer>(1) : std::nullopt;
    return ipow(ring_.param(), static_cast<unsigned>(polyops::degree(poly_)));
  }
  auto alg = algebra_of(ring_);
  if (lattice_.rows() < alg->dim()) return std::nullopt;
  return abs(determinant(lattice_));
}

std::optional<Integer> Ideal::norm() const {
  if (ring_.cls() == RingClass::UnivariatePoly) {
    if (poly_.empty()) return std::nullopt;
    return Integer(polyops::degree(poly_));
  }
  return index();
}

std::vector<Element> Ideal::elements() const {
  std::vector<Element> out;
  for (const auto& e : enumerate(ring_))
    if (contains(e)) out.push_back(e);
  return out;
}

std::string Ideal::to_string() const {
  auto gens = canonical_generators();
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i].to_string();
  }
  return s + ")";
}

bool operator==(const Ideal& a, const Ideal& b) {
  return a.ring_ == b.ring_ && a.lattice_ == b.lattice_ && a.poly_ == b.poly_;
}

bool operator<(const Ideal& a, const Ideal& b) {
  if (!(a.ring_ == b.ring_)) return a.ring_.to_string() < b.ring_.to_string();
  auto ia = a.norm();
  auto ib = b.norm();
  if (ia != ib) {
    if (!ia) return false;
    if (!ib) return true;
    return *ia < *ib;
  }
  if (a.poly_ != b.poly_) return a.poly_ < b.poly_;
  const Matrix& x = a.lattice_;
  const Matrix& y = b.lattice_;
  if (x.rows() != y.rows()) return x.rows() < y.rows();
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      if (x(r, c) != y(r, c)) return x(r, c) < y(r, c);
  return false;
}

Ideal colon_ideal(const Ideal& i, const Element& s) {
  check_handle(i.ring(), s.ring());
  const Ring& r = i.ring();
  if (r.cls() == RingClass::UnivariatePoly) {
    const Poly& g = i.poly_generator();
    if (g.empty()) return s.is_zero() ? Ideal::unit(r) : Ideal::zero(r);
    Poly d = polyops::gcd(g, s.poly(), r.param());
    return Ideal::principal(Element(r, polyops::divmod(g, d, r.param()).first));
  }
  auto alg = algebra_of(r);
  Matrix ls = alg->left_mult(s.coords());
  Matrix target = i.lattice();
  Matrix stacked = Matrix::vstack(ls, target);
  Matrix k = left_kernel(stacked);
  Matrix pre = k.rows() == 0 ? Matrix(0, alg->dim()) : k.col_range(0, alg->dim());
  return Ideal::from_lattice(r, pre);
}

Ideal ideal_sum(const Ideal& i, const Ideal& j) {
  check_handle(i.ring(), j.ring());
  std::vector<Element> gens = i.canonical_generators();
  auto more = j.canonical_generators();
  gens.insert(gens.end(), more.begin(), more.end());
  return Ideal(i.ring(), gens);
}

Ideal ideal_intersect(const Ideal& i, const Ideal& j) {
  check_handle(i.ring(), j.ring());
  const Ring& r = i.ring();
  if (r.cls() == RingClass::UnivariatePoly) {
    const Poly& a = i.poly_generator();
    const Poly& b = j.poly_generator();
    if (a.empty() || b.empty()) return Ideal::zero(r);
    Poly g = polyops::gcd(a, b, r.param());
    return Ideal::principal(Element(r, polyops::monic(polyops::mul(polyops::divmod(a, g, r.param()).first, b, r.param()), r.param())));
  }
  const Matrix& a = i.lattice();
  const Matrix& b = j.lattice();
  if (a.rows() == 0 || b.rows() == 0) return Ideal::zero(r);
  Matrix k = left_kernel(Matrix::vstack(a, b));
  if (k.rows() == 0) return Ideal::zero(r);
  Matrix rows = k.col_range(0, a.rows()) * a;
  return Ideal::from_lattice(r, rows);
}

Ideal translate_product(const std::vector<Element>& gens, const Ideal& k) {
  if (gens.empty()) fail(ErrorKind::EmptyGenerators, "translate_product needs at least one element");
  std::vector<Element> prods;
  for (const auto& s : gens) {
    check_handle(s.ring(), k.ring());
    for (const auto& g : k.canonical_generators()) prods.push_back(s * g);
  }
  return Ideal(k.ring(), prods);
}

Ideal ideal_product(const Ideal& i, const Ideal& j) { return translate_product(i.canonical_generators(), j); }

Ideal ideal_power(const Ideal& i, unsigned n) {
  Ideal out = Ideal::unit(i.ring());
  for (unsigned k = 0; k < n; ++k) out = ideal_product(out, i);
  return out;
}

QFMorphism::QFMorphism(Ideal source, Ideal target, Element scalar)
    : source_(std::move(source)), target_(std::move(target)), scalar_(std::move(scalar)) {
  check_handle(source_.ring(), target_.ring());
  check_handle(source_.ring(), scalar_.ring());
  for (const auto& g : source_.canonical_generators())
    if (!target_.contains(scalar_ * g))
      fail(ErrorKind::NotAMorphism, scalar_.to_string() + "·" + g.to_string() + " is not in " + target_.to_string());
}

QFMorphism qf_compose(const QFMorphism& f, const QFMorphism& g) {
  if (!(f.source() == g.target()))
    fail(ErrorKind::CompositionMismatch, "source " + f.source().to_string() + " differs from target " + g.target().to_string());
  return QFMorphism(g.source(), f.target(), f.scalar() * g.scalar());
}

std::vector<Ideal> all_right_ideals(const Ring& r) {
  auto elems = enumerate(r);
  std::vector<Ideal> found{Ideal::zero(r)};
  std::set<std::string> seen{Ideal::zero(r).lattice().to_string()};
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (const auto& e : elems) {
      if (found[k].contains(e)) continue;
      Ideal next = ideal_sum(found[k], Ideal::principal(e));
      if (seen.insert(next.lattice().to_string()).second) found.push_back(next);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace gabriel
