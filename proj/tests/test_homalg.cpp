#include "gabriel/errors.hpp"
#include "gabriel/finite.hpp"
#include "gabriel/fixtures.hpp"
#include "gabriel/module.hpp"
#include "gabriel/tower.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gabriel;

namespace {

const Ring kZ = Ring::integers();

Element z(long n) { return Element::from_int(kZ, n); }

Module zmod(long n) {
  FPModule m{kZ, Side::Right, 1, {}};
  if (n != 0) m.relations.push_back({z(n)});
  return realize(m).module;
}

Module ring_mod(const Ring& r, long d) { return cyclic_module(Ideal::principal(Element::from_int(r, d))); }

Module ut2_module(const std::string& name) {
  for (const auto& m : ut2_right_modules())
    if (m.name == name) return m.module;
  throw std::runtime_error("unknown module " + name);
}

bool iso(const AbelianGroup& a, const AbelianGroup& b) { return isomorphic_groups(a, b); }

AbelianGroup cyc(long n) { return AbelianGroup::cyclic(n); }

}  // namespace

TEST(NormalForm, IntegerPresentations) {
  FPModule m{kZ, Side::Right, 2, {{z(4), z(0)}, {z(0), z(6)}}};
  NormalForm nf = normal_form(m);
  EXPECT_EQ(nf.free_rank, 0u);
  EXPECT_EQ(nf.invariants, (std::vector<Integer>{2, 12}));
  EXPECT_EQ(nf.size, Integer(24));

  NormalForm free2 = normal_form(FPModule{kZ, Side::Right, 2, {}});
  EXPECT_EQ(free2.free_rank, 2u);
  EXPECT_TRUE(free2.invariants.empty());
}

TEST(NormalForm, ResidueRing) {
  Ring r = Ring::integers_mod(12);
  NormalForm nf = normal_form(FPModule{r, Side::Right, 1, {{Element::from_int(r, 3)}}});
  EXPECT_EQ(nf.size, Integer(3));
  EXPECT_EQ(nf.invariants, std::vector<Integer>{3});
  // Enumeration oracle: ℤ/12 modulo the multiples of 3.
  std::set<long> classes;
  for (long x = 0; x < 12; ++x) classes.insert(x % 3);
  EXPECT_EQ(nf.elements.size(), classes.size());
}

TEST(NormalForm, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> entry(-9, 9), op(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = entry(rng);
    Matrix b = a;
    for (int step = 0; step < 12; ++step) {
      std::size_t i = static_cast<std::size_t>(op(rng)), j = static_cast<std::size_t>(op(rng));
      if (i == j) continue;
      if (step % 2)
        b.add_row(i, j, entry(rng));
      else
        b.add_col(i, j, entry(rng));
    }
    auto to_fp = [](const Matrix& m) {
      FPModule f{kZ, Side::Right, 3, {}};
      for (std::size_t r = 0; r < m.rows(); ++r) f.relations.push_back({z(0), z(0), z(0)});
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) f.relations[r][c] = Element::from_int(kZ, m(r, c));
      return f;
    };
    EXPECT_EQ(normal_form(to_fp(a)), normal_form(to_fp(b)));
  }
}

TEST(NormalForm, PolynomialInvariantFactors) {
  Ring q = Ring::poly(0);
  auto p = [&](const char* s) { return parse_element(q, s); };
  FPModule m{q, Side::Right, 2, {{p("x-1"), p("0")}, {p("0"), p("x^2-1")}}};
  NormalForm nf = normal_form(m);
  EXPECT_EQ(nf.free_rank, 0u);
  EXPECT_EQ(nf.poly_invariants, (std::vector<std::string>{"x-1", "x^2-1"}));
  FPModule coprime{q, Side::Right, 2, {{p("x"), p("0")}, {p("0"), p("x+1")}}};
  EXPECT_EQ(normal_form(coprime).poly_invariants, std::vector<std::string>{"x^2+x"});
}

TEST(NormalForm, QuadraticNeedsPrincipalRelations) {
  Ring q = Ring::quadratic(-5);
  FPModule ok{q, Side::Right, 2, {{parse_element(q, "2"), parse_element(q, "0")}}};
  NormalForm nf = normal_form(ok);
  EXPECT_EQ(nf.free_rank, 1u);
  EXPECT_EQ(nf.poly_invariants.size(), 1u);
  FPModule bad{q, Side::Right, 1, {{parse_element(q, "2")}, {parse_element(q, "1+w")}}};
  try {
    normal_form(bad);
    FAIL() << "expected UnsupportedPresentation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedPresentation);
  }
}

TEST(Hom, Examples) {
  EXPECT_TRUE(iso(hom(zmod(6), zmod(4)).module.group(), cyc(2)));
  Module m = direct_sum({zmod(0), zmod(5)}).module;
  EXPECT_TRUE(iso(hom(zmod(0), m).module.group(), m.group()));

  Ring r = Ring::integers_mod(12);
  Module a = ring_mod(r, 3), b = ring_mod(r, 4);
  EXPECT_TRUE(hom(a, b).module.is_zero());
  // Brute force over all candidate maps.
  EXPECT_EQ(all_module_maps(tabulate(a), tabulate(b)).size(), 1u);
}

TEST(Hom, MapsRoundTrip) {
  Module a = zmod(6), b = zmod(4);
  HomSpace h = hom(a, b);
  for (const auto& x : h.module.group().elements()) {
    Matrix f = h.map_of(x);
    EXPECT_TRUE(is_module_map(a, b, f));
    EXPECT_EQ(h.coords_of(f), x);
  }
}

TEST(Hom, AgreesWithBruteForceOnResidueModules) {
  for (const auto& m : z12_modules())
    for (const auto& n : z12_modules()) {
      auto count = all_module_maps(tabulate(m.module), tabulate(n.module)).size();
      EXPECT_EQ(hom(m.module, n.module).module.group().order(), Integer(count)) << m.name << " " << n.name;
    }
}

TEST(Tensor, Examples) {
  EXPECT_TRUE(iso(tensor(zmod(4), zmod(6)).module.group(), cyc(2)));
  EXPECT_TRUE(iso(tensor(zmod(7), zmod(0)).module.group(), cyc(7)));
  Ring r = Ring::integers_mod(12);
  EXPECT_TRUE(tensor(ring_mod(r, 4), ring_mod(r, 3)).module.is_zero());
}

TEST(Tensor, PureTensorsAreBalanced) {
  Ring r = Ring::upper_triangular(2);
  Module m = ut2_module("P1+S2");
  Module n = char_dual(ut2_module("P1"));
  TensorProduct t = tensor(m, n);
  for (const auto& x : m.group().elements())
    for (const auto& y : n.group().elements())
      for (const auto& s : enumerate(r))
        EXPECT_EQ(t.pure(m.act(x, s.coords()), y), t.pure(x, n.act(y, s.coords())));
}

TEST(CharDual, Examples) {
  EXPECT_TRUE(iso(char_dual(zmod(6)).group(), cyc(6)));
  EXPECT_TRUE(char_dual(Module::zero(integers_algebra(), Side::Right)).is_zero());
  EXPECT_THROW(char_dual(zmod(0)), Error);

  Ring r = Ring::upper_triangular(2);
  IdealModule e12 = ideal_module(Ideal::principal(Element(r, Vec{0, 1, 0})));
  Module d = char_dual(e12.module);
  EXPECT_EQ(d.side(), Side::Left);
  EXPECT_EQ(d.group().order(), Integer(2));
  EXPECT_TRUE(d.valid());
  Module dd = char_dual(d);
  EXPECT_EQ(dd.side(), Side::Right);
  EXPECT_EQ(dd.group(), e12.module.group());
  EXPECT_EQ(dd.actions(), e12.module.actions());
}

TEST(CharDual, CharactersMatchEnumeration) {
  // Every homomorphism to ℚ/ℤ of a right module arises from exactly one coordinate vector.
  for (const auto& m : ut2_right_modules()) {
    Module d = char_dual(m.module);
    EXPECT_TRUE(d.valid()) << m.name;
    std::set<std::vector<Rational>> tables;
    for (const auto& k : d.group().elements()) {
      std::vector<Rational> values;
      for (const auto& x : m.module.group().elements()) values.push_back(pair_character(m.module.group(), k, x));
      tables.insert(values);
      for (const auto& s : enumerate(Ring::upper_triangular(2)))
        for (const auto& x : m.module.group().elements())
          EXPECT_EQ(pair_character(d.group(), d.act(k, s.coords()), x),
                    pair_character(m.module.group(), k, m.module.act(x, s.coords())));
    }
    EXPECT_EQ(tables.size(), m.module.group().elements().size());
  }
}

TEST(CharDual, HomIntoDualIsDualOfTensor) {
  for (const auto& n : ut2_right_modules())
    for (const auto& c : ut2_left_modules()) {
      AbelianGroup lhs = hom(c.module, char_dual(n.module)).module.group();
      AbelianGroup rhs = char_dual(tensor(n.module, c.module).module).group();
      EXPECT_TRUE(iso(lhs, rhs)) << n.name << " " << c.name;
    }
  for (const auto& n : z12_modules())
    for (const auto& c : z12_modules()) {
      AbelianGroup lhs = hom(c.module, char_dual(n.module).with_side(Side::Right)).module.group();
      AbelianGroup rhs = tensor(n.module, c.module).module.group();
      EXPECT_TRUE(iso(lhs, rhs)) << n.name << " " << c.name;
    }
}

TEST(Ext, Examples) {
  EXPECT_TRUE(iso(ext(zmod(4), zmod(0), 1), cyc(4)));
  EXPECT_TRUE(ext(zmod(0), zmod(4), 1).trivial());
  Ring r = Ring::integers_mod(12);
  Module two = ring_mod(r, 2);
  EXPECT_TRUE(iso(ext(two, two, 1), cyc(2)));
  Resolution res = resolve(two, 3);
  EXPECT_EQ(res.complex.ranks, (std::vector<std::size_t>{1, 1, 1, 1}));
  ExtensionCensus census = ext1_by_extensions(two, two);
  EXPECT_EQ(census.classes, torsion_counts(ext(two, two, 1), 2));
}

TEST(Ext, BudgetIsEnforced) {
  Module m = ut2_module("S1+S1+S1");
  try {
    resolve(m, 2, 4);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Ext, ResolutionsAreExact) {
  for (const auto& m : ut2_right_modules()) {
    Resolution r = resolve(m.module, 3);
    for (std::size_t n = 0; n + 1 < r.complex.d.size(); ++n) {
      Module f1 = free_module(r.complex, n + 1);
      Module f0 = free_module(r.complex, n);
      Matrix d1 = free_map_matrix(r.complex.alg, Side::Right, r.complex.ranks[n + 1], f0, r.complex.d[n]);
      Module f2 = free_module(r.complex, n + 2);
      Matrix d2 = free_map_matrix(r.complex.alg, Side::Right, r.complex.ranks[n + 2], f1, r.complex.d[n + 1]);
      if (f2.ngens() && f0.ngens()) {
        EXPECT_TRUE(is_zero_map(f0.group(), d2 * d1)) << m.name;
      }
    }
  }
}

TEST(Ext, OracleAgreementSample) {
  auto z12 = z12_modules();
  for (std::size_t i : {1u, 3u, 4u, 9u})
    for (std::size_t j : {1u, 3u, 5u, 10u}) {
      const auto& m = z12[i].module;
      const auto& n = z12[j].module;
      ExtensionCensus census = ext1_by_extensions(m, n);
      EXPECT_EQ(census.classes, torsion_counts(ext(m, n, 1), n.group().exponent())) << z12[i].name << " " << z12[j].name;
    }
  auto ut = ut2_right_modules();
  for (std::size_t i : {1u, 2u, 3u, 8u})
    for (std::size_t j : {1u, 2u, 3u}) {
      ExtensionCensus census = ext1_by_extensions(ut[i].module, ut[j].module);
      EXPECT_EQ(census.classes, torsion_counts(ext(ut[i].module, ut[j].module, 1), 2)) << ut[i].name << " " << ut[j].name;
    }
  // S1 is not projective: the extension 0 -> S2 -> P1 -> S1 -> 0 does not split.
  EXPECT_EQ(ext(ut2_module("S1"), ut2_module("S2"), 1).order(), Integer(2));
}

namespace {

// Matrix of a map between groups given by a per-generator image function.
template <class F>
Matrix matrix_of(const AbelianGroup& src, std::size_t target_gens, F image) {
  Matrix m(src.ngens(), target_gens);
  for (std::size_t i = 0; i < src.ngens(); ++i) m.set_row(i, image(src.unit(i)));
  return m;
}

bool exact_at(const AbelianGroup& g, const AbelianGroup& src, const Matrix& in, const AbelianGroup& dst, const Matrix& out) {
  Matrix image = src.ngens() ? in : Matrix(0, g.ngens());
  Matrix kernel = dst.ngens() ? kernel_gens(g, dst, out) : Matrix::identity(g.ngens());
  return same_subgroup(g, image, kernel);
}

// Node-by-node exactness of 0 -> Hom(C,N) -> Hom(B,N) -> Hom(A,N) -> Ext¹(C,N) -> Ext¹(B,N) -> Ext¹(A,N)
// for 0 -> A -f-> B -g-> C -> 0.
std::vector<bool> six_term(const Module& a, const Module& b, const Module& c, const Matrix& f, const Matrix& g,
                           const Module& n) {
  const AlgebraPtr& alg = a.algebra();
  const Side side = a.side();
  HomSpace hc = hom(c, n), hb = hom(b, n), ha = hom(a, n);
  Resolution ra = resolve(a, 2), rb = resolve(b, 2), rc = resolve(c, 2);
  Cohomology ea = hom_cohomology(ra.complex, n, 1), eb = hom_cohomology(rb.complex, n, 1), ec = hom_cohomology(rc.complex, n, 1);
  auto pull_hom = [&](const HomSpace& from, const HomSpace& to, const Matrix& map) {
    return matrix_of(from.module.group(), to.module.group().ngens(), [&](const Vec& x) {
      Matrix phi = from.map_of(x);
      return to.coords_of(compose(n, map, phi));
    });
  };
  Matrix gstar = pull_hom(hc, hb, g), fstar = pull_hom(hb, ha, f);
  auto ext_map = [&](const Resolution& p, const Resolution& q, const Matrix& map, const Cohomology& from, const Cohomology& to) {
    auto chain = lift_chain_map(p, q, map, 1);
    Matrix cochain = pullback_cochains(alg, n, q.complex.ranks[1], chain[1]);
    return induced_on_cohomology(from, to, cochain);
  };
  Matrix gext = ext_map(rb, rc, g, ec, eb), fext = ext_map(ra, rb, f, eb, ea);
  // Connecting map: lift the augmentation of C to B, restrict along the first differential, pull back to A.
  Matrix lifts(rc.complex.ranks[0], b.ngens());
  for (std::size_t i = 0; i < lifts.rows(); ++i) lifts.set_row(i, *express(c.group(), g, rc.augmentation.row(i)));
  Matrix lam = free_map_matrix(alg, side, rc.complex.ranks[0], b, lifts);
  Matrix connecting = matrix_of(ha.module.group(), ec.h.group.ngens(), [&](const Vec& x) {
    Matrix phi = ha.map_of(x);
    Vec cochain;
    for (std::size_t j = 0; j < rc.complex.ranks[1]; ++j) {
      Vec in_b = b.group().reduce(rc.complex.d[0].row(j) * lam);
      Vec in_a = *express(b.group(), f, in_b);
      Vec value = n.ngens() ? n.group().reduce(in_a * phi) : Vec{};
      cochain.insert(cochain.end(), value.begin(), value.end());
    }
    return class_of(ec.cochains, ec.h, cochain);
  });
  const AbelianGroup zero;
  return {
      exact_at(hc.module.group(), zero, Matrix(0, hc.module.group().ngens()), hb.module.group(), gstar),
      exact_at(hb.module.group(), hc.module.group(), gstar, ha.module.group(), fstar),
      exact_at(ha.module.group(), hb.module.group(), fstar, ec.h.group, connecting),
      exact_at(ec.h.group, ha.module.group(), connecting, eb.h.group, gext),
      exact_at(eb.h.group, ec.h.group, gext, ea.h.group, fext),
  };
}

}  // namespace

TEST(Ext, SixTermSequenceIsExact) {
  Ring r = Ring::integers_mod(12);
  // 0 -> ℤ/2 -> ℤ/4 -> ℤ/2 -> 0 and 0 -> ℤ/3 -> ℤ/6 -> ℤ/2 -> 0 over ℤ/12.
  struct Ses {
    Module a, b, c;
    Matrix f, g;
  };
  std::vector<Ses> seqs;
  {
    Module a = ring_mod(r, 2), b = ring_mod(r, 4), c = ring_mod(r, 2);
    Matrix f(1, 1), g(1, 1);
    f(0, 0) = 2;
    g(0, 0) = 1;
    seqs.push_back({a, b, c, f, g});
  }
  {
    Module a = ring_mod(r, 3), b = ring_mod(r, 6), c = ring_mod(r, 2);
    Matrix f(1, 1), g(1, 1);
    f(0, 0) = 2;
    g(0, 0) = 1;
    seqs.push_back({a, b, c, f, g});
  }
  for (const auto& s : seqs) {
    ASSERT_TRUE(is_module_map(s.a, s.b, s.f));
    ASSERT_TRUE(is_module_map(s.b, s.c, s.g));
    for (const auto& n : z12_modules())
      for (bool ok : six_term(s.a, s.b, s.c, s.f, s.g, n.module)) EXPECT_TRUE(ok) << n.name;
  }
  // 0 -> S2 -> P1 -> S1 -> 0 over UT₂(𝔽₂).
  AlgebraPtr ut = algebra_of(Ring::upper_triangular(2));
  Realized rp = realize(ut, Side::Right, 1, {Vec{0, 0, 1}});
  Realized rs = realize(ut, Side::Right, 1, {Vec{0, 0, 1}, Vec{0, 1, 0}});
  Matrix proj = map_from_generators(rp, rs.module, rs.generator_images);
  KernelResult kr = module_kernel(rp.module, rs.module, proj);
  EXPECT_EQ(kr.module.group().order(), Integer(2));
  for (const auto& n : ut2_right_modules())
    for (bool ok : six_term(kr.module, rp.module, rs.module, kr.inclusion, proj, n.module)) EXPECT_TRUE(ok) << n.name;
}

TEST(Towers, SurjectiveProjections) {
  Tower t{Direction::Inverse, {}, {}};
  for (long n = 1; n <= 5; ++n) t.levels.push_back(zmod(ipow(3, static_cast<unsigned>(n)).convert_to<long>()));
  for (std::size_t n = 0; n + 1 < t.levels.size(); ++n) t.maps.push_back(Matrix::identity(1));
  LimReport rep = tower_limits(t);
  EXPECT_EQ(rep.lim1, Verdict::Zero);
  EXPECT_FALSE(rep.stabilized_at.has_value());
  EXPECT_EQ(rep.truncation.group(), cyc(243));
}

TEST(Towers, ZeroTower) {
  Tower t{Direction::Inverse, {Module::zero(integers_algebra(), Side::Right), Module::zero(integers_algebra(), Side::Right),
                               Module::zero(integers_algebra(), Side::Right)},
          {Matrix(0, 0), Matrix(0, 0)}};
  LimReport rep = tower_limits(t);
  EXPECT_EQ(rep.lim1, Verdict::Zero);
  ASSERT_TRUE(rep.limit.has_value());
  EXPECT_TRUE(rep.limit->is_zero());
}

TEST(Towers, MultiplicationByPrime) {
  for (std::size_t depth : {3u, 4u, 6u}) {
    Tower t{Direction::Inverse, std::vector<Module>(depth, zmod(0)), std::vector<Matrix>(depth - 1, Matrix::identity(1))};
    for (auto& m : t.maps) m(0, 0) = 5;
    LimReport rep = tower_limits(t);
    EXPECT_EQ(rep.lim1, Verdict::Nonzero);
    ASSERT_TRUE(rep.limit.has_value());
    EXPECT_TRUE(rep.limit->is_zero());
    // Image chain 5^n ℤ: each step has index 5.
    ASSERT_EQ(rep.witness.size(), depth - 1);
    for (const auto& w : rep.witness) EXPECT_EQ(w, "5");
  }
}

TEST(Towers, MalformedMapsAreRejected) {
  Tower t{Direction::Inverse, {zmod(4), zmod(2)}, {Matrix::identity(1)}};
  try {
    tower_limits(t);
    FAIL() << "expected MalformedTower";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedTower);
  }
}
