#include "gabriel/delta.hpp"
#include "gabriel/errors.hpp"
#include "gabriel/fixtures.hpp"

#include <gtest/gtest.h>

using namespace gabriel;

namespace {

const Ring kZ = Ring::integers();
const Ring kZ12 = Ring::integers_mod(12);
const Ring kUT = Ring::upper_triangular(2);
const Ring kQ = Ring::quadratic(-5);

Ideal zi(long n) { return Ideal::principal(Element::from_int(kZ, n)); }
Ideal z12(long n) { return Ideal::principal(Element::from_int(kZ12, n)); }
Element ut(long a, long b, long c) { return Element(kUT, Vec{a, b, c}); }
Element qe(long a, long b) { return Element(kQ, Vec{a, b}); }
Ideal prime_over_two() { return Ideal(kQ, {qe(2, 0), qe(1, 1)}); }

TopologyBase z12_base() { return check_axioms(finite_base({z12(1), z12(2), z12(4)})); }
TopologyBase ut_base() { return check_axioms(full_enumeration({Ideal(kUT, {ut(0, 1, 0), ut(0, 0, 1)})})); }

Module zmod(long n) { return realize(FPModule{kZ, Side::Left, 1, {{Element::from_int(kZ, n)}}}).module; }
Module zfree(std::size_t r) { return Module::free(algebra_of(kZ), Side::Left, r); }

KComplex integers_at(long p, std::size_t depth) { return k_complex(ring_of_quotients(chain_base(zi(p), depth), depth)); }

// Elements x of a finite group with n·x = 0, counted by enumeration.
long killed_by(const AbelianGroup& g, long n) {
  long count = 0;
  for (const auto& x : g.elements())
    if (is_zero(g.reduce(Integer(n) * x))) ++count;
  return count;
}

std::vector<Integer> moduli(const Module& m) { return m.group().moduli(); }

}  // namespace

TEST(KComplex, IntegersAtPrimeGiveCyclicLevels) {
  const auto k = integers_at(3, 4);
  EXPECT_TRUE(k.injective);
  ASSERT_EQ(k.depth(), 4u);
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(moduli(k.levels[n - 1].quotient.module), (std::vector<Integer>{ipow(3, static_cast<unsigned>(n))}));
  for (const auto& f : k.l_tower.maps) EXPECT_FALSE(f.is_zero());
}

TEST(KComplex, FiniteCarriers) {
  const auto k12 = k_complex(ring_of_quotients(z12_base(), 1));
  EXPECT_FALSE(k12.injective);
  EXPECT_EQ(k12.h_minus1->module.group().order(), 4);
  EXPECT_TRUE(k12.l_zero->module.is_zero());
  const auto kut = k_complex(ring_of_quotients(ut_base(), 1));
  EXPECT_TRUE(kut.injective);
  EXPECT_EQ(kut.l_zero->module.group().order(), 2);
}

TEST(Delta, IntegersGivePrimePowerTower) {
  for (long p : {2, 5}) {
    const auto rep = delta_module(zfree(1), integers_at(p, 4), 4);
    EXPECT_EQ(rep.path, "tower");
    EXPECT_TRUE(rep.cross_check.ok()) << rep.cross_check.to_string();
    EXPECT_EQ(rep.lim1, Verdict::Zero);
    ASSERT_EQ(rep.delta.depth(), 4u);
    for (std::size_t n = 1; n <= 4; ++n)
      EXPECT_EQ(moduli(rep.delta.levels[n - 1]), (std::vector<Integer>{ipow(p, static_cast<unsigned>(n))}));
    for (const auto& l : rep.hom_tower->levels) EXPECT_TRUE(l.is_zero());
  }
}

TEST(Delta, ResidueRingByMappingCone) {
  const auto k = k_complex(ring_of_quotients(z12_base(), 1));
  for (const auto& [name, m] : z12_modules()) {
    const auto rep = delta_module(m, k, 1);
    EXPECT_EQ(rep.path, "mapping cone");
    EXPECT_TRUE(rep.cross_check.ok()) << name;
    // U/R = 0 and ker u ≅ ℤ/4, so Δ ≅ Hom(ℤ/4, M) = {x : 4x = 0}.
    EXPECT_EQ(rep.delta.levels[0].group().order(), killed_by(m.group(), 4)) << name;
  }
}

TEST(Delta, UpperTriangularAgreesWithResolution) {
  const auto k = k_complex(ring_of_quotients(ut_base(), 1));
  for (const auto& [name, m] : ut2_left_modules()) {
    const auto rep = delta_module(m, k, 1);
    EXPECT_TRUE(rep.cross_check.ok()) << name << " " << rep.cross_check.to_string();
  }
}

TEST(FiveTerm, ExactOnResidueRingModules) {
  const auto k = k_complex(ring_of_quotients(z12_base(), 1));
  for (const auto& [name, m] : z12_modules()) {
    const auto ft = five_term(m, k, 1);
    EXPECT_TRUE(ft.exact.ok()) << name << " " << ft.exact.to_string();
    EXPECT_TRUE(ft.ext2.ok()) << name;
    // U = ℤ/3 is a ring direct factor, hence projective: Hom(U, M) is the 3-torsion and Ext¹(U, M) = 0.
    EXPECT_EQ(ft.levels[0].objects[1].order(), killed_by(m.group(), 3)) << name;
    EXPECT_TRUE(ft.levels[0].objects[4].trivial()) << name;
  }
}

TEST(FiveTerm, ExactOnUpperTriangularModules) {
  const auto k = k_complex(ring_of_quotients(ut_base(), 1));
  for (const auto& [name, m] : ut2_left_modules()) {
    const auto ft = five_term(m, k, 1);
    EXPECT_TRUE(ft.exact.ok()) << name << " " << ft.exact.to_string();
  }
}

TEST(FiveTerm, IntegersAtPrime) {
  const long p = 3;
  const auto ft = five_term(zfree(1), integers_at(p, 4), 4);
  EXPECT_TRUE(ft.exact.ok()) << ft.exact.to_string();
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto& o = ft.levels[n - 1].objects;
    EXPECT_TRUE(o[0].trivial());
    EXPECT_EQ(o[1], AbelianGroup::free(1));
    EXPECT_EQ(o[3].order(), ipow(p, static_cast<unsigned>(n)));
    EXPECT_TRUE(o[4].trivial());
    // δ is reduction mod pⁿ: 1 generates Δ_n.
    EXPECT_TRUE(is_surjective(o[2], o[3], ft.levels[n - 1].maps[2]));
  }
  EXPECT_EQ(ft.hom_u, Verdict::Zero);
  EXPECT_EQ(ft.delta, Verdict::Nonzero);
  EXPECT_EQ(ft.ext1_u, Verdict::Nonzero) << ft.ext1_reason;
}

TEST(FiveTerm, CyclicPrimePowerIsDeltaIsomorphic) {
  const long p = 2;
  for (long kexp : {1, 2}) {
    const std::size_t depth = static_cast<std::size_t>(kexp) + 2;
    const long pk = kexp == 1 ? p : p * p;
    const auto ft = five_term(zmod(pk), integers_at(p, depth), depth);
    EXPECT_TRUE(ft.exact.ok()) << ft.exact.to_string();
    for (std::size_t n = static_cast<std::size_t>(kexp); n <= depth; ++n) {
      const auto& lv = ft.levels[n - 1];
      EXPECT_TRUE(is_injective(lv.objects[2], lv.objects[3], lv.maps[2]));
      EXPECT_TRUE(is_surjective(lv.objects[2], lv.objects[3], lv.maps[2]));
    }
    EXPECT_EQ(ft.hom_u, Verdict::Zero);
    EXPECT_EQ(ft.ext1_u, Verdict::Zero);
  }
}

TEST(FiveTerm, CarrierCollapses) {
  const auto ft = five_term_carrier(integers_at(5, 8), 4);
  EXPECT_TRUE(ft.exact.ok()) << ft.exact.to_string();
  EXPECT_TRUE(ft.colimit.ok()) << ft.colimit.to_string();
  EXPECT_EQ(ft.hom_u, Verdict::Nonzero);
  EXPECT_EQ(ft.delta, Verdict::Zero);
  EXPECT_EQ(ft.ext1_u, Verdict::Zero);
  try {
    five_term_carrier(integers_at(5, 4), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DepthMismatch);
  }
}

TEST(BetaTheta, IntegersAndFreeRankTwo) {
  for (long p : {2, 5}) {
    const auto b = chain_base(zi(p), 4);
    const auto k = k_complex(ring_of_quotients(b, 4));
    for (std::size_t r : {1u, 2u}) {
      const auto bt = beta_theta(zfree(r), k, b, 4);
      EXPECT_TRUE(bt.beta_delta.ok() && bt.theta_lambda.ok() && bt.xi.ok() && bt.zeta.ok() && bt.naturality.ok())
          << bt.to_string();
      for (std::size_t n = 1; n <= 4; ++n)
        EXPECT_EQ(bt.levels[n - 1].delta.group().order(), ipow(ipow(p, static_cast<unsigned>(n)), static_cast<unsigned>(r)));
    }
  }
}

TEST(BetaTheta, TorsionFreePartOfMixedModule) {
  const long p = 5;
  const auto b = chain_base(zi(p), 4);
  const auto k = k_complex(ring_of_quotients(b, 4));
  const Module mixed = direct_sum({zfree(1), zmod(p)}).module;
  const Module tf = torsion_submodule(mixed, b).quotient.module;
  EXPECT_EQ(tf.group(), AbelianGroup::free(1));
  const auto bt = beta_theta(tf, k, b, 4);
  EXPECT_TRUE(bt.xi.ok() && bt.zeta.ok()) << bt.to_string();
}

TEST(BetaTheta, QuadraticOrderRankTwo) {
  const auto b = chain_base(prime_over_two(), 3);
  const auto k = k_complex(ring_of_quotients(b, 3));
  const auto bt = beta_theta(Module::free(algebra_of(kQ), Side::Left, 2), k, b, 3);
  EXPECT_TRUE(bt.beta_delta.ok() && bt.theta_lambda.ok() && bt.xi.ok() && bt.zeta.ok() && bt.naturality.ok())
      << bt.to_string();
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(bt.levels[n - 1].lambda.group().order(), ipow(4, static_cast<unsigned>(n)));
}

TEST(BetaTheta, TorsionIsRejected) {
  const auto b = chain_base(zi(3), 3);
  try {
    beta_theta(zmod(3), k_complex(ring_of_quotients(b, 3)), b, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TorsionObstruction);
  }
}

TEST(Perp, IntegersAtPrime) {
  const auto k = integers_at(3, 4);
  EXPECT_EQ(perp_membership(zmod(9), k, 4).member, std::optional<bool>(true));
  EXPECT_EQ(perp_membership(zfree(1), k, 4).member, std::optional<bool>(false));
  // Λ(ℤ) truncated at depth 4 is ℤ/81; Hom(L_n, ℤ/81) needs more than four levels to die out.
  const auto lam = complete_module(zfree(1), chain_base(zi(3), 4), 4);
  EXPECT_FALSE(perp_membership(lam.contra.top, k, 4).member.has_value());
  EXPECT_EQ(perp_membership(lam.contra.top, integers_at(3, 6), 6).member, std::optional<bool>(true));
}

TEST(Perp, ResidueRingTwoPieceExtensions) {
  const auto k = k_complex(ring_of_quotients(z12_base(), 1));
  for (const auto& [name, m] : z12_modules()) {
    const auto rep = perp_membership(m, k, 1);
    ASSERT_TRUE(rep.member.has_value());
    // Members are exactly the modules without 3-torsion.
    EXPECT_EQ(*rep.member, killed_by(m.group(), 3) == 1) << name;
    EXPECT_TRUE(rep.prediction.ok()) << name << " " << rep.prediction.to_string();
  }
}

TEST(Ext2, VanishesOnFiniteFixtures) {
  const auto k12 = k_complex(ring_of_quotients(z12_base(), 1));
  for (const auto& [name, m] : z12_modules()) EXPECT_TRUE(ext2_vanish(k12, m).vanish.ok()) << name;
  const auto kut = k_complex(ring_of_quotients(ut_base(), 1));
  for (const auto& [name, m] : ut2_left_modules()) EXPECT_TRUE(ext2_vanish(kut, m).vanish.ok()) << name;
  const auto r = ext2_vanish(integers_at(2, 2), zfree(1));
  EXPECT_TRUE(r.vanish.ok());
  EXPECT_EQ(r.note, "hereditary ring, vacuous");
}

TEST(Endo, IntegersAtPrimeAndAtSix) {
  for (long p : {3, 6}) {
    const auto b = chain_base(zi(p), 3);
    const auto rep = endo_compare(k_complex(ring_of_quotients(b, 3)), b, 3);
    EXPECT_TRUE(rep.bijective.ok() && rep.multiplicative.ok() && rep.transitions.ok() && rep.topology.ok())
        << rep.to_string();
    for (std::size_t n = 1; n <= 3; ++n) {
      EXPECT_EQ(rep.levels[n - 1].ring_size, ipow(p, static_cast<unsigned>(n)));
      EXPECT_EQ(rep.levels[n - 1].endo_size, ipow(p, static_cast<unsigned>(n)));
    }
    EXPECT_EQ(rep.witnesses.size(), 3u);
  }
}

TEST(Endo, QuadraticOrderAtPrimeOverTwo) {
  const auto b = chain_base(prime_over_two(), 3);
  const auto rep = endo_compare(k_complex(ring_of_quotients(b, 3)), b, 3);
  EXPECT_TRUE(rep.bijective.ok() && rep.multiplicative.ok() && rep.transitions.ok() && rep.topology.ok())
      << rep.to_string();
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(rep.levels[n - 1].endo_size, ipow(2, static_cast<unsigned>(n)));
}

TEST(Endo, NonInjectiveUnitIsRejected) {
  try {
    endo_compare(k_complex(ring_of_quotients(z12_base(), 1)), z12_base(), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FaithfulOnly);
  }
}
