#include "gabriel/ideal.hpp"
#include "gabriel/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace gabriel;

namespace {

Element z(long n) { return Element::from_int(Ring::integers(), n); }
Ideal zi(long n) { return Ideal::principal(z(n)); }

/// Set-wise right ideal generated by gens in a finite ring: closure under addition and right multiplication.
std::set<Element> closure(const Ring& r, const std::vector<Element>& gens) {
  auto all = enumerate(r);
  std::set<Element> s{Element::zero(r)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (const auto& g : gens)
      for (const auto& x : all)
        if (s.insert(g * x).second) grew = true;
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(a + b).second) grew = true;
  }
  return s;
}

std::set<Element> as_set(const Ideal& i) {
  auto e = i.elements();
  return {e.begin(), e.end()};
}

Element ut(long a, long b, long c) { return Element(Ring::upper_triangular(2), Vec{a, b, c}); }

}  // namespace

TEST(RingElements, ParseAndPrint) {
  auto q = Ring::quadratic(-5);
  EXPECT_EQ(parse_element(q, "2+1w").to_string(), "2+1w");
  EXPECT_EQ((parse_element(q, "w") * parse_element(q, "w")).to_string(), "-5");
  auto m = Ring::integers_mod(12);
  EXPECT_EQ(parse_element(m, "3 mod 12").to_string(), "3 mod 12");
  EXPECT_EQ(parse_element(m, "15").to_string(), "3 mod 12");
  auto px = Ring::poly(0);
  EXPECT_EQ(parse_element(px, "x^2+1").to_string(), "x^2+1");
  EXPECT_EQ((parse_element(px, "x+1") * parse_element(px, "x-1")).to_string(), "x^2-1");
  auto t = Ring::upper_triangular(2);
  EXPECT_EQ(parse_element(t, "[[1,0],[0,1]]"), Element::one(t));
  EXPECT_THROW(parse_element(t, "[[1,0],[1,1]]"), Error);
}

TEST(RingElements, UpperTriangularIsNoncommutative) {
  auto e11 = ut(1, 0, 0), e12 = ut(0, 1, 0);
  EXPECT_EQ(e11 * e12, e12);
  EXPECT_TRUE((e12 * e11).is_zero());
}

TEST(Ideals, IntegerExamples) {
  EXPECT_EQ(colon_ideal(zi(6), z(4)), zi(3));
  EXPECT_EQ(colon_ideal(zi(7), z(0)), zi(1));
  EXPECT_EQ(ideal_intersect(zi(4), zi(6)), zi(12));
  EXPECT_EQ(ideal_sum(zi(4), zi(6)), zi(2));
  EXPECT_EQ(translate_product({z(6)}, zi(4)), zi(24));
  EXPECT_EQ(translate_product({z(2), z(3)}, zi(5)), zi(5));
  EXPECT_THROW(translate_product({}, zi(5)), Error);
  EXPECT_THROW(colon_ideal(zi(5), Element::one(Ring::integers_mod(4))), Error);
}

TEST(Ideals, QuadraticPrimeAboveTwo) {
  auto q = Ring::quadratic(-5);
  Ideal p = ideal_sum(Ideal::principal(parse_element(q, "2")), Ideal::principal(parse_element(q, "1+w")));
  EXPECT_FALSE(p.contains(Element::one(q)));
  EXPECT_EQ(p.index(), Integer(2));
  // A principal generator would have norm a² + 5b² = 2, which has no solution.
  for (long a = -2; a <= 2; ++a)
    for (long b = -1; b <= 1; ++b) EXPECT_NE(a * a + 5 * b * b, 2);
  EXPECT_EQ(ideal_product(p, p), Ideal::principal(parse_element(q, "2")));
  EXPECT_EQ(ideal_power(p, 3).index(), Integer(8));
}

TEST(Ideals, UpperTriangularAgainstEnumeration) {
  auto r = Ring::upper_triangular(2);
  auto elems = enumerate(r);
  ASSERT_EQ(elems.size(), 8u);
  auto ideals = all_right_ideals(r);
  for (const auto& i : ideals) {
    EXPECT_EQ(as_set(i), closure(r, i.canonical_generators()));
    for (const auto& s : elems) {
      std::set<Element> expect;
      for (const auto& x : elems)
        if (i.contains(s * x)) expect.insert(x);
      EXPECT_EQ(as_set(colon_ideal(i, s)), expect);
      EXPECT_EQ(as_set(translate_product({s}, i)), closure(r, [&] {
                  std::vector<Element> v;
                  for (const auto& k : i.elements()) v.push_back(s * k);
                  return v;
                }()));
    }
    for (const auto& j : ideals) {
      std::set<Element> meet, sum;
      for (const auto& x : elems)
        if (i.contains(x) && j.contains(x)) meet.insert(x);
      EXPECT_EQ(as_set(ideal_intersect(i, j)), meet);
      for (const auto& a : i.elements())
        for (const auto& b : j.elements()) sum.insert(a + b);
      EXPECT_EQ(as_set(ideal_sum(i, j)), sum);
    }
  }
}

TEST(Ideals, UpperTriangularExamples) {
  auto r = Ring::upper_triangular(2);
  Ideal e12r = Ideal::principal(ut(0, 1, 0));
  EXPECT_EQ(colon_ideal(e12r, ut(1, 0, 0)), Ideal(r, {ut(0, 1, 0), ut(0, 0, 1)}));
  // e11·e12 = e12, so e11·(e12R) is e12R itself.
  EXPECT_EQ(translate_product({ut(1, 0, 0)}, e12r), e12r);
  EXPECT_TRUE(translate_product({ut(0, 0, 1)}, e12r).is_zero());
}

TEST(Ideals, Invariants) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-60, 60);
  for (int k = 0; k < 300; ++k) {
    Ideal i = zi(dist(rng));
    Element s = z(dist(rng));
    EXPECT_EQ(colon_ideal(i, z(1)), i);
    EXPECT_TRUE(colon_ideal(i, s).contains(i));
    if (i.contains(s)) {
      EXPECT_TRUE(colon_ideal(i, s).is_unit());
    }
    Ideal t = translate_product({s}, i);
    for (const auto& g : i.canonical_generators()) EXPECT_TRUE(t.contains(s * g));
    EXPECT_EQ(Ideal(i.ring(), i.canonical_generators()), i);
  }
  auto q = Ring::quadratic(-5);
  std::uniform_int_distribution<long> small(-6, 6);
  for (int k = 0; k < 100; ++k) {
    Ideal i(q, {Element(q, Vec{small(rng), small(rng)}), Element(q, Vec{small(rng), small(rng)})});
    Element s(q, Vec{small(rng), small(rng)});
    EXPECT_TRUE(colon_ideal(i, s).contains(i));
    EXPECT_EQ(Ideal(q, i.canonical_generators()), i);
    for (const auto& g : colon_ideal(i, s).canonical_generators()) EXPECT_TRUE(i.contains(s * g));
  }
}

TEST(Ideals, PolynomialIdeals) {
  auto r = Ring::poly(0);
  Ideal a = Ideal::principal(parse_element(r, "x^2-1"));
  Ideal b = Ideal::principal(parse_element(r, "2x+2"));
  EXPECT_EQ(ideal_sum(a, b).poly_generator(), parse_element(r, "x+1").poly());
  EXPECT_EQ(ideal_intersect(a, b), a);
  EXPECT_EQ(colon_ideal(a, parse_element(r, "x-1")), Ideal::principal(parse_element(r, "x+1")));
  auto f3 = Ring::poly(3);
  EXPECT_EQ(Ideal::principal(parse_element(f3, "2x+1")).poly_generator(), parse_element(f3, "x+2").poly());
}

TEST(QFMorphisms, Composition) {
  QFMorphism f(zi(9), zi(3), z(1));
  QFMorphism g(zi(27), zi(9), z(1));
  auto h = qf_compose(f, g);
  EXPECT_EQ(h.source(), zi(27));
  EXPECT_EQ(h.target(), zi(3));
  QFMorphism d(zi(3), zi(3), z(2));
  EXPECT_EQ(qf_compose(d, d).scalar(), z(4));
  EXPECT_THROW(qf_compose(g, f), Error);
  EXPECT_THROW(QFMorphism(zi(2), zi(4), z(1)), Error);
}

TEST(QFMorphisms, UpperTriangularEnumeration) {
  auto r = Ring::upper_triangular(2);
  auto elems = enumerate(r);
  auto ideals = all_right_ideals(r);
  std::vector<QFMorphism> all;
  for (const auto& j : ideals)
    for (const auto& i : ideals)
      for (const auto& s : elems) {
        auto je = j.elements();
        bool ok = std::all_of(je.begin(), je.end(), [&](const Element& x) { return i.contains(s * x); });
        if (ok) all.emplace_back(j, i, s);
      }
  for (const auto& f : all)
    for (const auto& g : all) {
      if (!(f.source() == g.target())) continue;
      auto h = qf_compose(f, g);
      EXPECT_NE(std::find(all.begin(), all.end(), h), all.end());
    }
}
