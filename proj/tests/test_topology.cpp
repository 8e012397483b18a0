#include "gabriel/errors.hpp"
#include "gabriel/topology.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <set>

using namespace gabriel;

namespace {

const Ring kZ = Ring::integers();
const Ring kUT = Ring::upper_triangular(2);

Ideal zi(long n) { return Ideal::principal(Element::from_int(kZ, n)); }
Element ut(long a, long b, long c) { return Element(kUT, Vec{a, b, c}); }
Ideal ut_seed() { return Ideal(kUT, {ut(0, 1, 0), ut(0, 0, 1)}); }

bool all_verified(const TopologyBase& b) {
  for (const auto& [name, check] : b.flags)
    if (!check.ok()) return false;
  return !b.flags.empty();
}

// Right ideals I of UT₂(𝔽₂) with I·M₂(𝔽₂) = M₂(𝔽₂), computed with raw 2×2 matrices.
std::set<std::vector<Element>> perfect_filter_oracle() {
  using M2 = std::array<int, 4>;
  auto mul = [](const M2& a, const M2& b) {
    return M2{(a[0] * b[0] + a[1] * b[2]) % 2, (a[0] * b[1] + a[1] * b[3]) % 2, (a[2] * b[0] + a[3] * b[2]) % 2,
              (a[2] * b[1] + a[3] * b[3]) % 2};
  };
  std::set<std::vector<Element>> out;
  for (const auto& i : all_right_ideals(kUT)) {
    std::set<M2> span{{0, 0, 0, 0}};
    for (const auto& e : i.elements()) {
      M2 a{static_cast<int>(e.coords()[0]), static_cast<int>(e.coords()[1]), 0, static_cast<int>(e.coords()[2])};
      for (int m = 0; m < 16; ++m) {
        M2 b{m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1};
        std::set<M2> grown = span;
        for (const auto& x : span) {
          M2 p = mul(a, b);
          grown.insert({(x[0] + p[0]) % 2, (x[1] + p[1]) % 2, (x[2] + p[2]) % 2, (x[3] + p[3]) % 2});
        }
        span = grown;
      }
    }
    if (span.size() == 16) out.insert(i.elements());
  }
  return out;
}

}  // namespace

TEST(Axioms, PrimePowerChain) {
  auto b = check_axioms(chain_base(zi(5), 6));
  EXPECT_TRUE(all_verified(b));
  for (const char* name : {"T0", "T1", "T2", "T3", "T4'"}) EXPECT_EQ(b.flags.at(name).status, Status::Verified) << name;
  EXPECT_NE(b.flags.at("T3").bound.find("depth 6"), std::string::npos);
}

TEST(Axioms, TwoAndThreeFailIntersection) {
  auto b = check_axioms(finite_base({zi(2), zi(3)}));
  const Check& t2 = b.flags.at("T2");
  ASSERT_EQ(t2.status, Status::Failed);
  ASSERT_EQ(t2.witness.size(), 1u);
  EXPECT_NE(t2.witness[0].find("(6)"), std::string::npos);
}

TEST(Axioms, NonDescendingChainIsRejected) {
  try {
    chain_of({zi(4), zi(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedChain);
  }
}

TEST(Axioms, FiniteEnumerationMatchesPerfectFilter) {
  auto b = check_axioms(full_enumeration({ut_seed()}));
  EXPECT_TRUE(all_verified(b));
  std::set<std::vector<Element>> got;
  for (const auto& i : b.ideals) got.insert(i.elements());
  EXPECT_EQ(got, perfect_filter_oracle());
  EXPECT_EQ(got.size(), 2u);
}

TEST(Axioms, ResidueRingChain) {
  const Ring r = Ring::integers_mod(12);
  auto b = check_axioms(chain_base(Ideal::principal(Element::from_int(r, 2)), 3));
  EXPECT_TRUE(all_verified(b));
  EXPECT_EQ(b.chain(3).back(), Ideal::principal(Element::from_int(r, 4)));
}

TEST(Axioms, NonGabrielFilterFailsExhaustiveT4) {
  // {e12R + e22R, e12R, ...}: the filter above e12R is linear but fails T4 exhaustively or earlier.
  auto b = check_axioms(full_enumeration({Ideal(kUT, {ut(0, 1, 0)})}));
  bool any_failed = false;
  for (const auto& [name, c] : b.flags) any_failed = any_failed || c.status == Status::Failed;
  EXPECT_TRUE(any_failed);
}

TEST(Saturate, UnitIdealIsFixed) {
  auto s = saturate({zi(1)}, self_witness(), {});
  EXPECT_FALSE(s.partial);
  ASSERT_EQ(s.base.ideals.size(), 1u);
  EXPECT_EQ(s.base.ideals[0], zi(1));
}

TEST(Saturate, PowersOfSix) {
  SaturationBudget budget{3, 64, Integer(1296)};
  auto s = saturate({zi(6)}, self_witness(), budget);
  EXPECT_FALSE(s.partial);
  std::vector<Ideal> expected{zi(6), zi(36), zi(216), zi(1296)};
  EXPECT_EQ(s.base.ideals, expected);
  EXPECT_TRUE(all_verified(s.base));
  auto again = saturate(s.base.ideals, self_witness(), budget);
  EXPECT_EQ(again.base.ideals, s.base.ideals);
  for (const auto& j : s.base.ideals)
    for (const auto& k : s.base.ideals) {
      Ideal p = translate_product(j.canonical_generators(), k);
      if (*p.norm() <= 1296) {
        EXPECT_TRUE(s.base.contains(p));
      }
    }
}

TEST(Saturate, UncappedRunIsPartial) {
  auto s = saturate({zi(6)}, self_witness(), {2, 64, std::nullopt});
  EXPECT_TRUE(s.partial);
  EXPECT_EQ(s.rounds_run, 2u);
  for (const auto& i : s.base.ideals) EXPECT_EQ(*i.norm() % 6, 0);
}

TEST(Saturate, UpperTriangularSeed) {
  auto s = saturate({ut_seed()}, self_witness(), {});
  EXPECT_FALSE(s.partial);
  EXPECT_TRUE(all_verified(s.base));
  EXPECT_TRUE(same_filter(s.base, full_enumeration({ut_seed()})));
  auto again = saturate(s.base.ideals, self_witness(), {});
  EXPECT_EQ(again.base.ideals, s.base.ideals);
}

TEST(Union, DivisorFamily) {
  auto two = chain_base(zi(2), 4);
  auto three = chain_base(zi(3), 4);
  auto six = chain_base(zi(6), 4);
  auto u = union_topologies(make_family({two, three, six}));
  EXPECT_TRUE(same_filter(u, six));
  EXPECT_EQ(u.flags.at("T4'").status, Status::Verified);
  EXPECT_EQ(u.flags.at("T2").status, Status::Verified);
  // Divisor-lattice oracle: (d) lies in the filter iff d divides a power of 6.
  for (long d = 1; d <= 36; ++d) {
    long r = d;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    EXPECT_EQ(u.contains(zi(d)), r == 1) << d;
  }
}

TEST(Union, SingleMemberIsIdentity) {
  auto five = chain_base(zi(5), 4);
  auto u = union_topologies(make_family({five}));
  EXPECT_EQ(u.ideals, five.ideals);
  EXPECT_TRUE(all_verified(u));
}

TEST(Union, UndirectedFamilyIsRejected) {
  try {
    union_topologies(make_family({chain_base(zi(2), 3), chain_base(zi(3), 3)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDirected);
  }
}

TEST(Union, ComparableFiniteTopologies) {
  auto small = full_enumeration({Ideal::unit(kUT)});
  auto large = full_enumeration({ut_seed()});
  auto u = union_topologies(make_family({small, large}));
  EXPECT_TRUE(same_filter(u, large));
  EXPECT_TRUE(all_verified(u));
}

TEST(TOmega, CommutativeSelfWitness) {
  auto b = chain_base(zi(5), 4);
  EXPECT_TRUE(check_t_omega(b, self_witness(), default_sample(b)).ok());
  auto q = chain_base(Ideal(Ring::quadratic(-5), {Element(Ring::quadratic(-5), Vec{2, 0}), Element(Ring::quadratic(-5), Vec{1, 1})}), 3);
  EXPECT_TRUE(check_t_omega(q, self_witness(), default_sample(q)).ok());
}

TEST(TOmega, TwoSidedBase) {
  auto b = full_enumeration({ut_seed()});
  EXPECT_TRUE(check_t_omega(b, two_sided_witness(b), default_sample(b)).ok());
}

TEST(TOmega, WrongProviderFails) {
  auto b = chain_base(zi(5), 3);
  Check c = check_t_omega(b, unit_witness(), default_sample(b));
  ASSERT_EQ(c.status, Status::Failed);
  EXPECT_EQ(c.witness.size(), 3u);
}

TEST(GeneratorCriterion, RandomIntegerPairs) {
  auto b = chain_base(zi(2), 5);
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> pick(1, 48);
  for (int t = 0; t < 40; ++t) {
    Ideal i = zi(pick(rng));
    long jg = pick(rng);
    Ideal j = zi(jg);
    std::vector<Element> elems;
    for (long k = -12; k <= 12; ++k) elems.push_back(Element::from_int(kZ, jg * k));
    auto c = t4_generator_criterion(b, i, j, elems);
    EXPECT_EQ(c.all_elements, c.generators) << i.to_string() << " " << j.to_string();
  }
}

TEST(GeneratorCriterion, ExhaustiveUpperTriangular) {
  auto b = full_enumeration({ut_seed()});
  for (const auto& i : all_right_ideals(kUT))
    for (const auto& j : all_right_ideals(kUT)) {
      auto c = t4_generator_criterion(b, i, j, j.elements());
      EXPECT_EQ(c.all_elements, c.generators) << i.to_string() << " " << j.to_string();
    }
}

TEST(Corrigendum, BoundedUnionFailsT4) {
  auto rep = regress_corrigendum(6, 4);
  EXPECT_TRUE(rep.j0_in_h.ok());
  EXPECT_TRUE(rep.colons_in_h.ok());
  EXPECT_TRUE(rep.i_not_in_h.ok());
  EXPECT_EQ(rep.t4.status, Status::Failed);
  EXPECT_FALSE(rep.samples.empty());
}

TEST(Corrigendum, MonomialMembership) {
  MonomialRing r{4};
  MonomialIdeal i{{r.x(1) * r.y(1), r.x(2) * r.y(2)}};
  EXPECT_TRUE(i.contains(r.x(1) * r.y(1) * r.y(3)));
  EXPECT_FALSE(i.contains((r.y(1) * r.x(2)).pow(5)));
  EXPECT_TRUE(i.contains(Support{r.x(1) * r.y(1), r.x(2) * r.y(2) * r.x(3)}));
  EXPECT_FALSE(i.contains(Support{r.x(1) * r.y(1), r.x(3)}));
}
