#include "gabriel/ring.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace gabriel {

Ring Ring::integers() { return Ring(RingClass::Integers, 0); }

Ring Ring::integers_mod(const Integer& n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "IntegersMod requires n >= 2");
  return Ring(RingClass::IntegersMod, n);
}

Ring Ring::poly(const Integer& p) {
  if (p != 0 && !is_prime(p)) fail(ErrorKind::InvalidArgument, "PrimeField requires a prime");
  return Ring(RingClass::UnivariatePoly, p);
}

Ring Ring::quadratic(const Integer& d) {
  if (d == 0 || d == 1 || !is_squarefree(d)) fail(ErrorKind::InvalidArgument, "QuadraticOrder requires square-free d != 0, 1");
  return Ring(RingClass::QuadraticOrder, d);
}

Ring Ring::upper_triangular(const Integer& p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "UpperTriangular2 requires a prime field");
  return Ring(RingClass::UpperTriangular2, p);
}

bool Ring::is_domain() const {
  switch (cls_) {
    case RingClass::Integers:
    case RingClass::UnivariatePoly:
    case RingClass::QuadraticOrder: return true;
    case RingClass::IntegersMod: return is_prime(param_);
    case RingClass::UpperTriangular2: return false;
  }
  return false;
}

std::string Ring::to_string() const {
  switch (cls_) {
    case RingClass::Integers: return "Integers";
    case RingClass::IntegersMod: return "IntegersMod(" + gabriel::to_string(param_) + ")";
    case RingClass::UnivariatePoly:
      return param_ == 0 ? "UnivariatePoly(Rationals)" : "UnivariatePoly(PrimeField(" + gabriel::to_string(param_) + "))";
    case RingClass::QuadraticOrder: return "QuadraticOrder(" + gabriel::to_string(param_) + ")";
    case RingClass::UpperTriangular2: return "UpperTriangular2(PrimeField(" + gabriel::to_string(param_) + "))";
  }
  return "?";
}

namespace polyops {

Poly normalize(Poly a, const Integer& p) {
  if (p != 0) {
    for (auto& c : a) {
      if (denominator(c) != 1) {
        Integer inv = inverse_mod(denominator(c), p);
        c = Rational(mod(numerator(c) * inv, p));
      } else {
        c = Rational(mod(numerator(c), p));
      }
    }
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly add(const Poly& a, const Poly& b, const Integer& p) {
  Poly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return normalize(std::move(c), p);
}

Poly sub(const Poly& a, const Poly& b, const Integer& p) {
  Poly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  return normalize(std::move(c), p);
}

Poly mul(const Poly& a, const Poly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return normalize(std::move(c), p);
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

namespace {
Rational field_inverse(const Rational& c, const Integer& p) {
  if (p == 0) return Rational(1) / c;
  return Rational(inverse_mod(numerator(c), p));
}
}  // namespace

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Integer& p) {
  if (b.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  Poly q;
  Poly r = a;
  const Rational lead_inv = field_inverse(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    Rational coef = r.back() * lead_inv;
    if (q.size() < shift + 1) q.resize(shift + 1);
    q[shift] += coef;
    Poly t(shift + b.size());
    for (std::size_t i = 0; i < b.size(); ++i) t[shift + i] = coef * b[i];
    r = sub(r, t, p);
  }
  return {normalize(std::move(q), p), r};
}

Poly monic(const Poly& a, const Integer& p) {
  if (a.empty()) return a;
  Rational inv = field_inverse(a.back(), p);
  Poly out = a;
  for (auto& c : out) c *= inv;
  return normalize(std::move(out), p);
}

Poly gcd(const Poly& a, const Poly& b, const Integer& p) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = divmod(x, y, p).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

std::string to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    const Rational& c = a[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (c < 0)
      out << (first ? "-" : "-");
    else if (!first)
      out << "+";
    if (i == 0 || mag != 1) out << gabriel::to_string(mag);
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

}  // namespace polyops

namespace {

Vec reduce_coords(const Ring& r, Vec v) {
  switch (r.cls()) {
    case RingClass::Integers:
    case RingClass::QuadraticOrder: return v;
    case RingClass::IntegersMod:
    case RingClass::UpperTriangular2:
      for (auto& x : v) x = mod(x, r.param());
      return v;
    case RingClass::UnivariatePoly: break;
  }
  fail(ErrorKind::InvalidArgument, "ring class has no coordinates");
}

std::size_t coord_count(const Ring& r) {
  switch (r.cls()) {
    case RingClass::Integers:
    case RingClass::IntegersMod: return 1;
    case RingClass::QuadraticOrder: return 2;
    case RingClass::UpperTriangular2: return 3;
    case RingClass::UnivariatePoly: return 0;
  }
  return 0;
}

void check_same(const Ring& a, const Ring& b) {
  if (!(a == b)) fail(ErrorKind::HandleMismatch, a.to_string() + " vs " + b.to_string());
}

}  // namespace

Element::Element(Ring ring, Vec coords) : ring_(std::move(ring)) {
  if (!ring_.lattice_backed()) fail(ErrorKind::InvalidArgument, "polynomial elements need coefficient lists");
  if (coords.size() != coord_count(ring_)) fail(ErrorKind::InvalidArgument, "wrong coordinate count for " + ring_.to_string());
  coords_ = reduce_coords(ring_, std::move(coords));
}

Element::Element(Ring ring, Poly poly) : ring_(std::move(ring)) {
  if (ring_.cls() != RingClass::UnivariatePoly) fail(ErrorKind::InvalidArgument, "coefficient list given for a non-polynomial ring");
  poly_ = polyops::normalize(std::move(poly), ring_.param());
}

Element Element::zero(const Ring& r) {
  if (r.cls() == RingClass::UnivariatePoly) return Element(r, Poly{});
  return Element(r, zero_vec(coord_count(r)));
}

Element Element::one(const Ring& r) {
  switch (r.cls()) {
    case RingClass::UnivariatePoly: return Element(r, Poly{Rational(1)});
    case RingClass::UpperTriangular2: return Element(r, Vec{1, 0, 1});
    case RingClass::QuadraticOrder: return Element(r, Vec{1, 0});
    default: return Element(r, Vec{1});
  }
}

Element Element::from_int(const Ring& r, const Integer& n) {
  switch (r.cls()) {
    case RingClass::UnivariatePoly: return Element(r, Poly{Rational(n)});
    case RingClass::UpperTriangular2: return Element(r, Vec{n, 0, n});
    case RingClass::QuadraticOrder: return Element(r, Vec{n, 0});
    default: return Element(r, Vec{n});
  }
}

bool Element::is_zero() const {
  if (ring_.cls() == RingClass::UnivariatePoly) return poly_.empty();
  return gabriel::is_zero(coords_);
}

Element Element::operator+(const Element& o) const {
  check_same(ring_, o.ring_);
  if (ring_.cls() == RingClass::UnivariatePoly) return Element(ring_, polyops::add(poly_, o.poly_, ring_.param()));
  return Element(ring_, coords_ + o.coords_);
}

Element Element::operator-(const Element& o) const {
  check_same(ring_, o.ring_);
  if (ring_.cls() == RingClass::UnivariatePoly) return Element(ring_, polyops::sub(poly_, o.poly_, ring_.param()));
  return Element(ring_, coords_ - o.coords_);
}

Element Element::operator-() const { return zero(ring_) - *this; }

Element Element::operator*(const Element& o) const {
  check_same(ring_, o.ring_);
  const Vec& x = coords_;
  const Vec& y = o.coords_;
  switch (ring_.cls()) {
    case RingClass::Integers:
    case RingClass::IntegersMod: return Element(ring_, Vec{x[0] * y[0]});
    case RingClass::QuadraticOrder:
      return Element(ring_, Vec{x[0] * y[0] + ring_.param() * x[1] * y[1], x[0] * y[1] + x[1] * y[0]});
    case RingClass::UpperTriangular2:
      return Element(ring_, Vec{x[0] * y[0], x[0] * y[1] + x[1] * y[2], x[2] * y[2]});
    case RingClass::UnivariatePoly: return Element(ring_, polyops::mul(poly_, o.poly_, ring_.param()));
  }
  fail(ErrorKind::InvalidArgument, "unknown ring class");
}

std::string Element::to_string() const {
  const Vec& x = coords_;
  switch (ring_.cls()) {
    case RingClass::Integers: return gabriel::to_string(x[0]);
    case RingClass::IntegersMod: return gabriel::to_string(x[0]) + " mod " + gabriel::to_string(ring_.param());
    case RingClass::QuadraticOrder:
      if (x[1] == 0) return gabriel::to_string(x[0]);
      return gabriel::to_string(x[0]) + (x[1] < 0 ? "-" : "+") + gabriel::to_string(abs(x[1])) + "w";
    case RingClass::UpperTriangular2:
      return "[[" + gabriel::to_string(x[0]) + "," + gabriel::to_string(x[1]) + "],[0," + gabriel::to_string(x[2]) + "]]";
    case RingClass::UnivariatePoly: return polyops::to_string(poly_);
  }
  return "?";
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// Splits "a+b-c" into signed terms.
std::vector<std::string> signed_terms(const std::string& s) {
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '/') {
      terms.push_back(cur);
      cur.clear();
    }
    cur.push_back(c);
  }
  terms.push_back(cur);
  return terms;
}

Poly parse_poly(const std::string& text, const Integer& p) {
  std::string s = strip(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty polynomial literal");
  Poly out;
  for (std::string term : signed_terms(s)) {
    if (term.empty() || term == "+" || term == "-") fail(ErrorKind::ParseError, "malformed polynomial '" + text + "'");
    Rational sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') sign = -1;
      term = term.substr(1);
    }
    auto xpos = term.find('x');
    Rational coef = 1;
    std::size_t deg = 0;
    if (xpos == std::string::npos) {
      coef = parse_rational(term);
    } else {
      std::string c = term.substr(0, xpos);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coef = parse_rational(c);
      std::string rest = term.substr(xpos + 1);
      if (rest.empty()) {
        deg = 1;
      } else if (rest[0] == '^') {
        deg = parse_integer(rest.substr(1)).convert_to<std::size_t>();
      } else {
        fail(ErrorKind::ParseError, "malformed polynomial term '" + term + "'");
      }
    }
    if (out.size() < deg + 1) out.resize(deg + 1);
    out[deg] += sign * coef;
  }
  return polyops::normalize(std::move(out), p);
}

Vec parse_quadratic(const std::string& text) {
  std::string s = strip(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty quadratic literal");
  Integer a = 0, b = 0;
  for (std::string term : signed_terms(s)) {
    if (term.empty()) fail(ErrorKind::ParseError, "malformed quadratic literal '" + text + "'");
    if (term.back() == 'w') {
      std::string c = term.substr(0, term.size() - 1);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (c.empty() || c == "+")
        b += 1;
      else if (c == "-")
        b -= 1;
      else
        b += parse_integer(c);
    } else {
      a += parse_integer(term);
    }
  }
  return {a, b};
}

Vec parse_ut2(const std::string& text) {
  std::string s = strip(text);
  static const std::map<std::string, Vec> named = {
      {"0", {0, 0, 0}}, {"1", {1, 0, 1}}, {"e11", {1, 0, 0}}, {"e12", {0, 1, 0}}, {"e22", {0, 0, 1}}};
  if (auto it = named.find(s); it != named.end()) return it->second;
  if (s.size() < 2 || s.substr(0, 2) != "[[") fail(ErrorKind::ParseError, "malformed matrix literal '" + text + "'");
  std::string body;
  for (char c : s)
    if (c != '[' && c != ']') body.push_back(c);
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) fail(ErrorKind::ParseError, "matrix literal needs four entries: '" + text + "'");
  if (parse_integer(parts[2]) != 0) fail(ErrorKind::ParseError, "upper-triangular literal has a nonzero lower-left entry");
  return {parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[3])};
}

}  // namespace

Element parse_element(const Ring& r, const std::string& text) {
  switch (r.cls()) {
    case RingClass::Integers: return Element(r, Vec{parse_integer(text)});
    case RingClass::IntegersMod: {
      std::string s = strip(text);
      auto pos = s.find("mod");
      if (pos != std::string::npos) {
        if (parse_integer(s.substr(pos + 3)) != r.param())
          fail(ErrorKind::ParseError, "residue literal '" + text + "' has the wrong modulus");
        s = s.substr(0, pos);
      }
      return Element(r, Vec{parse_integer(s)});
    }
    case RingClass::UnivariatePoly: return Element(r, parse_poly(text, r.param()));
    case RingClass::QuadraticOrder: return Element(r, parse_quadratic(text));
    case RingClass::UpperTriangular2: return Element(r, parse_ut2(text));
  }
  fail(ErrorKind::ParseError, "unknown ring class");
}

Vec ZAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out = group.zero();
  for (std::size_t l = 0; l < dim(); ++l) {
    if (x[l] == 0) continue;
    for (std::size_t m = 0; m < dim(); ++m) {
      if (y[m] == 0) continue;
      Integer k = x[l] * y[m];
      const Vec& c = product[l][m];
      for (std::size_t i = 0; i < dim(); ++i)
        if (c[i] != 0) out[i] += k * c[i];
    }
  }
  return group.reduce(out);
}

Matrix ZAlgebra::right_mult(const Vec& y) const {
  Matrix m(dim(), dim());
  for (std::size_t l = 0; l < dim(); ++l) m.set_row(l, mul(basis(l), y));
  return m;
}

Matrix ZAlgebra::left_mult(const Vec& y) const {
  Matrix m(dim(), dim());
  for (std::size_t l = 0; l < dim(); ++l) m.set_row(l, mul(y, basis(l)));
  return m;
}

namespace {

AlgebraPtr build_algebra(const Ring& r) {
  auto alg = std::make_shared<ZAlgebra>();
  alg->name = r.to_string();
  alg->commutative = r.commutative();
  switch (r.cls()) {
    case RingClass::Integers: alg->group = AbelianGroup::free(1); break;
    case RingClass::IntegersMod: alg->group = AbelianGroup({r.param()}); break;
    case RingClass::QuadraticOrder: alg->group = AbelianGroup::free(2); break;
    case RingClass::UpperTriangular2: alg->group = AbelianGroup({r.param(), r.param(), r.param()}); break;
    case RingClass::UnivariatePoly: fail(ErrorKind::UnsupportedPresentation, "polynomial rings have no finite ℤ-basis");
  }
  const std::size_t n = alg->group.ngens();
  alg->product.assign(n, std::vector<Vec>(n));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m) {
      Element bl(r, alg->group.unit(l));
      Element bm(r, alg->group.unit(m));
      alg->product[l][m] = (bl * bm).coords();
    }
  alg->one = Element::one(r).coords();
  return alg;
}

}  // namespace

AlgebraPtr algebra_of(const Ring& r) {
  static std::mutex mu;
  static std::map<std::string, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = r.to_string();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto alg = build_algebra(r);
  cache.emplace(key, alg);
  return alg;
}

AlgebraPtr integers_algebra() { return algebra_of(Ring::integers()); }

AlgebraPtr matrix_algebra(const Integer& p) {
  auto alg = std::make_shared<ZAlgebra>();
  alg->name = "M2(PrimeField(" + to_string(p) + "))";
  alg->commutative = false;
  alg->group = AbelianGroup({p, p, p, p});
  // Basis order e11, e12, e21, e22; e_ij e_kl = δ_jk e_il.
  auto idx = [](int i, int j) { return static_cast<std::size_t>(2 * i + j); };
  alg->product.assign(4, std::vector<Vec>(4, zero_vec(4)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j == k) alg->product[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
  alg->one = {1, 0, 0, 1};
  return alg;
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& r, const Matrix& ideal_rows, const std::string& name) {
  Quotient q = quotient(r->group, ideal_rows);
  auto alg = std::make_shared<ZAlgebra>();
  alg->name = name;
  alg->commutative = r->commutative;
  alg->group = q.group;
  const std::size_t n = q.group.ngens();
  alg->product.assign(n, std::vector<Vec>(n));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m) {
      Vec prod = r->mul(q.lift.row(l), q.lift.row(m));
      alg->product[l][m] = q.group.reduce(prod * q.projection);
    }
  alg->one = q.group.reduce(r->one * q.projection);
  return {alg, q.projection, q.lift};
}

Vec coords_of(const Element& e) {
  if (!e.ring().lattice_backed()) fail(ErrorKind::UnsupportedPresentation, "polynomial elements have no lattice coordinates");
  return e.coords();
}

Element element_of(const Ring& r, const Vec& coords) { return Element(r, coords); }

std::vector<Element> enumerate(const Ring& r) {
  if (!r.finite()) fail(ErrorKind::FiniteOnly, r.to_string() + " is infinite");
  std::vector<Element> out;
  for (const auto& v : algebra_of(r)->group.elements()) out.emplace_back(r, v);
  return out;
}

}  // namespace gabriel
