#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gabriel {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;
using Vec = std::vector<Integer>;

/// Nonnegative gcd.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Least nonnegative residue; m == 0 leaves a unchanged.
Integer mod(const Integer& a, const Integer& m);
/// Floor division for m > 0.
Integer floor_div(const Integer& a, const Integer& m);
Integer ipow(const Integer& base, unsigned exp);
/// Extended gcd: returns g = gcd(a,b) >= 0 with g = x*a + y*b.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);
/// Inverse of a modulo m (m > 1); throws InvalidArgument when not a unit.
Integer inverse_mod(const Integer& a, const Integer& m);
bool is_prime(const Integer& n);
/// Largest e with p^e | n, for n != 0 and p > 1.
unsigned valuation(Integer n, const Integer& p);
bool is_squarefree(const Integer& n);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);
Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

std::int64_t to_i64(const Integer& n);

bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);

}  // namespace gabriel
