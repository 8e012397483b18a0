#include "gabriel/integer.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <cctype>

namespace gabriel {

Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a);
  Integer y = abs(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Integer mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

Integer floor_div(const Integer& a, const Integer& m) {
  Integer q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer result = 1;
  Integer b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer x, y;
  Integer g = ext_gcd(mod(a, m), m, x, y);
  if (g != 1) fail(ErrorKind::InvalidArgument, to_string(a) + " is not a unit modulo " + to_string(m));
  return mod(x, m);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned valuation(Integer n, const Integer& p) {
  unsigned e = 0;
  if (n == 0) return 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_squarefree(const Integer& n) {
  Integer m = abs(n);
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % (d * d) == 0) return false;
  }
  return true;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Integer parse_integer(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) fail(ErrorKind::ParseError, "empty integer literal");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (start == t.size() || !std::all_of(t.begin() + static_cast<long>(start), t.end(),
                                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorKind::ParseError, "invalid integer literal '" + text + "'");
  }
  Integer v(t.substr(start));
  return t[0] == '-' ? Integer(-v) : v;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::int64_t to_i64(const Integer& n) { return n.convert_to<std::int64_t>(); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Vec zero_vec(std::size_t n) { return Vec(n, Integer(0)); }

}  // namespace gabriel
