#include "gabriel/errors.hpp"
#include "gabriel/fixtures.hpp"
#include "gabriel/sflat.hpp"

#include <gtest/gtest.h>

using namespace gabriel;

namespace {

const Ring kZ = Ring::integers();
const Ring kZ12 = Ring::integers_mod(12);
const Ring kUT = Ring::upper_triangular(2);

Ideal zi(long n) { return Ideal::principal(Element::from_int(kZ, n)); }
Ideal z12(long n) { return Ideal::principal(Element::from_int(kZ12, n)); }
Element ut(long a, long b, long c) { return Element(kUT, Vec{a, b, c}); }

TopologyBase z12_base() { return check_axioms(finite_base({z12(1), z12(2), z12(4)})); }
TopologyBase ut_base() { return check_axioms(full_enumeration({Ideal(kUT, {ut(0, 1, 0), ut(0, 0, 1)})})); }

Module zmod(long n) { return realize(FPModule{kZ, Side::Left, 1, {{Element::from_int(kZ, n)}}}).module; }
Module zfree(std::size_t r) { return Module::free(algebra_of(kZ), Side::Left, r); }
Module z12mod(long n) { return realize(FPModule{kZ12, Side::Left, 1, {{Element::from_int(kZ12, n)}}}).module; }

KComplex integers_at(long p, std::size_t depth) { return k_complex(ring_of_quotients(chain_base(zi(p), depth), depth)); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

Integer power_of(long p, std::size_t e) { return ipow(p, static_cast<unsigned>(e)); }

}  // namespace

TEST(Projective, FiniteRings) {
  EXPECT_TRUE(projective_check(Module::free(algebra_of(kZ12), Side::Left, 2)).ok());
  // ℤ/12 = ℤ/4 × ℤ/3, so ℤ/4 and ℤ/3 are projective while ℤ/2 and ℤ/6 are not.
  EXPECT_TRUE(projective_check(z12mod(4)).ok());
  EXPECT_TRUE(projective_check(z12mod(3)).ok());
  EXPECT_FALSE(projective_check(z12mod(2)).ok());
  EXPECT_FALSE(projective_check(z12mod(6)).ok());
}

TEST(Projective, UpperTriangularLeftModules) {
  // Nonzero projectives with at most 8 elements: P1, P2, P1², P1 ⊕ P2, P1³ with |P1| = 2, |P2| = 4.
  int count = 0;
  for (const auto& [name, m] : ut2_left_modules())
    if (!m.is_zero() && projective_check(m).ok()) ++count;
  EXPECT_EQ(count, 5);
}

TEST(StronglyFlat, IntegersAtPrime) {
  for (long p : {2, 5}) {
    const auto k = integers_at(p, 3);
    for (std::size_t r : {1u, 2u}) {
      const auto rep = strongly_flat_check(zfree(r), k, 3);
      EXPECT_TRUE(rep.strongly_flat()) << rep.to_string();
      EXPECT_EQ(rep.tensor, AbelianGroup::free(r));
      ASSERT_EQ(rep.quotients.size(), 3u);
      for (std::size_t n = 1; n <= 3; ++n)
        EXPECT_EQ(rep.quotients[n - 1].quotient.order(), ipow(power_of(p, n), static_cast<unsigned>(r)));
    }
  }
}

TEST(StronglyFlat, TorsionIsNotFlat) {
  EXPECT_EQ(kind_of([] { strongly_flat_check(zmod(3), integers_at(3, 2), 2); }), ErrorKind::NotFlat);
  const auto k12 = k_complex(ring_of_quotients(z12_base(), 1));
  EXPECT_EQ(kind_of([&] { strongly_flat_check(z12mod(2), k12, 1); }), ErrorKind::NotFlat);
}

TEST(StronglyFlat, ResidueRingProjectives) {
  const auto k12 = k_complex(ring_of_quotients(z12_base(), 1));
  for (const Module& f : {Module::free(algebra_of(kZ12), Side::Left, 1), z12mod(4), z12mod(3)}) {
    const auto rep = strongly_flat_check(f, k12, 1);
    EXPECT_TRUE(rep.strongly_flat()) << rep.to_string();
    // U = ℤ/3, so U⊗F is the 3-part of F.
    EXPECT_EQ(rep.tensor.order(), f.group().count_killed_by(3));
  }
}

TEST(StronglyFlat, UpperTriangularRegular) {
  const auto k = k_complex(ring_of_quotients(ut_base(), 1));
  const auto rep = strongly_flat_check(Module::free(algebra_of(kUT), Side::Left, 1), k, 1);
  EXPECT_TRUE(rep.strongly_flat()) << rep.to_string();
  EXPECT_EQ(rep.tensor.order(), 16);
}

TEST(StronglyFlat, ExtensionDatumTower) {
  const auto k = integers_at(3, 8);
  const ExtensionDatum d{1, 1, std::vector<Matrix>(7, Matrix::from_rows({Vec{1}}, 1))};
  const GTower g = materialize(d, k, 8);
  EXPECT_TRUE(g.exact.ok()) << g.exact.to_string();
  ASSERT_EQ(g.maps.size(), 7u);
  // G/3^nG ≅ V/3^nV since U/3^nU = 0 and U is torsion-free.
  const auto rep = strongly_flat_check(d, k, 4);
  EXPECT_TRUE(rep.strongly_flat()) << rep.to_string();
  EXPECT_EQ(rep.tensor, AbelianGroup::free(2));
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(rep.quotients[n - 1].quotient.order(), power_of(3, n));
}

TEST(StronglyFlat, CarrierAsDatum) {
  const auto k = integers_at(2, 6);
  const auto rep = strongly_flat_check(ExtensionDatum{0, 1, {}}, k, 3);
  EXPECT_TRUE(rep.strongly_flat()) << rep.to_string();
  for (const auto& q : rep.quotients) EXPECT_TRUE(q.quotient.trivial());
  EXPECT_EQ(kind_of([&] { strongly_flat_check(ExtensionDatum{0, 1, {}}, k, 4); }), ErrorKind::DepthMismatch);
  const auto k12 = k_complex(ring_of_quotients(z12_base(), 1));
  EXPECT_EQ(kind_of([&] { materialize(ExtensionDatum{0, 1, {}}, k12, 1); }), ErrorKind::UnsupportedPresentation);
}

TEST(WeaklyCotorsion, IntegersAtPrime) {
  const auto k = integers_at(2, 4);
  EXPECT_TRUE(weakly_cotorsion_check(zmod(8), k, 4).weakly_cotorsion());
  EXPECT_EQ(weakly_cotorsion_check(zfree(1), k, 4).ext1, Verdict::Nonzero);
  EXPECT_TRUE(weakly_cotorsion_carrier(integers_at(2, 8), 4).weakly_cotorsion());
}

TEST(WeaklyCotorsion, UpperTriangularAgreesWithResolution) {
  const auto q = ring_of_quotients(ut_base(), 1);
  const auto k = k_complex(q);
  const Module u = carrier_module(q, Side::Left);
  for (const auto& [name, c] : ut2_left_modules()) {
    const auto rep = weakly_cotorsion_check(c, k, 1);
    EXPECT_EQ(rep.weakly_cotorsion(), ext(u, c, 1).trivial()) << name;
  }
}

TEST(Filtration, AdicCompletionOfIntegers) {
  for (long p : {3, 6}) {
    const auto lam = complete_module(zfree(1), chain_base(zi(p), 4), 4);
    const Filtration f = two_sided_filtration(lam.contra);
    ASSERT_EQ(f.steps.size(), 4u);
    for (const auto& s : f.steps) {
      EXPECT_EQ(s.quotient, AbelianGroup::cyclic(p));
      EXPECT_TRUE(s.annihilated.ok());
    }
    EXPECT_TRUE(f.limit.ok()) << f.to_string();
  }
}

TEST(Filtration, FreeRankTwoAndZero) {
  const auto b = chain_base(zi(6), 3);
  const auto lam = complete_module(zfree(2), b, 3);
  const Filtration f = two_sided_filtration(lam.contra);
  for (const auto& s : f.steps) EXPECT_EQ(s.quotient.order(), 36);
  EXPECT_TRUE(f.limit.ok());
  const auto zero = complete_module(Module::zero(algebra_of(kZ), Side::Left), b, 3);
  const Filtration fz = two_sided_filtration(zero.contra);
  for (const auto& s : fz.steps) EXPECT_TRUE(s.quotient.trivial());
  EXPECT_TRUE(fz.limit.ok());
}
