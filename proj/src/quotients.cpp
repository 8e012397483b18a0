#include "gabriel/quotients.hpp"

#include "gabriel/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace gabriel {

namespace {

std::string vec_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + gabriel::to_string(v[i]);
  return out + ")";
}

QElement make_fraction(Vec num, Integer den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& c : num) c = -c;
  }
  Integer g = den;
  for (const auto& c : num) g = gcd(g, c);
  if (g > 1) {
    for (auto& c : num) c /= g;
    den /= g;
  }
  return {std::move(num), std::move(den)};
}

bool kills(const Module& m, const Vec& x, const std::vector<Element>& gens) {
  return std::all_of(gens.begin(), gens.end(),
                     [&](const Element& g) { return is_zero(m.group().reduce(m.act(x, g.coords()))); });
}

/// Matrix expressing the generators of the smaller ideal module in the coordinates of the larger.
Matrix inclusion_between(const IdealModule& small, const IdealModule& large, const AbelianGroup& ring_group) {
  Matrix out(small.module.ngens(), large.module.ngens());
  for (std::size_t t = 0; t < small.module.ngens(); ++t) {
    auto c = express(ring_group, large.inclusion, small.inclusion.row(t));
    if (!c) fail(ErrorKind::MalformedChain, "levels are not nested");
    out.set_row(t, large.module.group().reduce(*c));
  }
  return out;
}

std::vector<Ideal> sheaf_levels(const TopologyBase& b, std::size_t depth) {
  if (b.kind == BaseKind::Chain) return b.chain(depth);
  if (!b.ring.finite()) fail(ErrorKind::ChainRequired, "an infinite ring needs a chain base");
  return {least_ideal(b)};
}

Element as_element(const Ring& r, const Vec& v) { return Element(r, v); }

}  // namespace

Matrix annihilated_by(const Module& m, const Ideal& i) {
  const auto gens = i.canonical_generators();
  Matrix f(m.ngens(), 0);
  for (const auto& g : gens) f = Matrix::hstack(f, m.action(g.coords()));
  return kernel_gens(m.group(), power(m.group(), gens.size()), f);
}

static bool all_unit(const TopologyBase& b) {
  const auto members = b.members();
  return std::all_of(members.begin(), members.end(), [](const Ideal& i) { return i.is_unit(); });
}

Ideal least_ideal(const TopologyBase& b) {
  const auto members = b.members();
  Ideal out = members.front();
  for (const auto& i : members) out = ideal_intersect(out, i);
  if (!b.contains(out)) fail(ErrorKind::InvalidArgument, "the filter has no least ideal: " + out.to_string());
  return out;
}

TorsionReport torsion_submodule(const Module& m, const TopologyBase& b) {
  if (m.algebra() != algebra_of(b.ring)) fail(ErrorKind::HandleMismatch, "module and base over different rings");
  if (m.side() != Side::Right && !m.algebra()->commutative) fail(ErrorKind::HandleMismatch, "torsion needs a right module");
  std::vector<Ideal> members = b.members();
  if (b.ring.cls() == RingClass::Integers) {
    unsigned e = 1;
    for (const auto& d : m.group().moduli())
      if (d != 0) e = std::max<unsigned>(e, static_cast<unsigned>(boost::multiprecision::msb(d)) + 1);
    const std::size_t n = members.size();
    for (std::size_t k = 0; k < n; ++k)
      if (!members[k].is_zero()) members.push_back(ideal_power(members[k], e));
  }
  Matrix rows(0, m.ngens());
  std::vector<Matrix> killed;
  for (const auto& i : members) {
    killed.push_back(annihilated_by(m, i));
    rows = Matrix::vstack(rows, killed.back());
  }
  TorsionReport rep{submodule(m, rows), quotient_module(m, rows), {}};
  for (std::size_t g = 0; g < rep.submodule.inclusion.rows(); ++g) {
    const Vec x = rep.submodule.inclusion.row(g);
    for (const auto& i : members)
      if (kills(m, x, i.canonical_generators())) {
        rep.annihilators.emplace_back(vec_string(x), i.to_string());
        break;
      }
  }
  return rep;
}

Sheafification sheafify(const Module& n, const TopologyBase& b, std::size_t depth) {
  if (n.algebra() != algebra_of(b.ring)) fail(ErrorKind::HandleMismatch, "module and base over different rings");
  if (depth == 0) fail(ErrorKind::InvalidArgument, "depth must be positive");
  Sheafification out;
  out.levels = sheaf_levels(b, depth);
  out.system.direction = Direction::Direct;
  const AbelianGroup& rg = algebra_of(b.ring)->group;
  std::vector<IdealModule> ims;
  std::vector<HomSpace> homs;
  for (const auto& i : out.levels) {
    ims.push_back(ideal_module(i));
    homs.push_back(hom(ims.back().module, n));
    out.system.levels.push_back(homs.back().module);
  }
  for (std::size_t k = 0; k + 1 < homs.size(); ++k) {
    Matrix j = inclusion_between(ims[k + 1], ims[k], rg);
    const std::size_t a = homs[k].module.ngens();
    Matrix t(a, homs[k + 1].module.ngens());
    for (std::size_t c = 0; c < a; ++c) {
      Vec e = homs[k].module.group().unit(c);
      Matrix f = homs[k].map_of(e);
      Matrix restricted = n.ngens() ? n.group().reduce_rows(j * f) : Matrix(j.rows(), 0);
      t.set_row(c, homs[k + 1].coords_of(restricted));
    }
    out.system.maps.push_back(std::move(t));
  }
  const auto& lv = out.system.levels;
  const auto& mp = out.system.maps;
  if (n.is_zero()) {
    out.stabilized = lv.back();
    out.description = "0";
    return out;
  }
  bool all_zero = !mp.empty();
  bool all_injective = true;
  for (std::size_t k = 0; k < mp.size(); ++k) {
    all_zero = all_zero && is_zero_map(lv[k + 1].group(), mp[k]);
    all_injective = all_injective && is_injective(lv[k].group(), lv[k + 1].group(), mp[k]);
  }
  std::size_t iso_tail = 0;
  for (std::size_t k = mp.size(); k-- > 0;) {
    if (!is_injective(lv[k].group(), lv[k + 1].group(), mp[k]) || !is_surjective(lv[k].group(), lv[k + 1].group(), mp[k])) break;
    ++iso_tail;
  }
  if (all_zero) {
    out.vanishes = true;
    out.description = "0: every transition map vanishes";
  } else if (mp.empty() || iso_tail >= std::min<std::size_t>(mp.size(), kStabilizationWindow - 1)) {
    out.stabilized = lv.back();
    out.description = "stabilized: " + lv.back().group().to_string();
  } else if (all_injective) {
    out.description = "ascending union of " + std::to_string(lv.size()) + " levels " + lv.front().group().to_string() +
                      " along injective, non-surjective transitions";
  } else {
    out.description = "truncated direct system of " + std::to_string(lv.size()) + " levels";
  }
  return out;
}

std::string to_string(CarrierKind k) {
  switch (k) {
    case CarrierKind::LocalizedPID: return "LocalizedPID";
    case CarrierKind::FiniteRing: return "FiniteRing";
    case CarrierKind::LatticeLocalization: return "LatticeLocalization";
  }
  return "?";
}

std::pair<Matrix, Integer> inverse_level(const Ideal& i) {
  const auto idx = i.index();
  if (!idx || i.is_zero()) fail(ErrorKind::InvalidArgument, "level " + i.to_string() + " has infinite index");
  const Ring& r = i.ring();
  const Integer m = *idx;
  const Ideal mr = Ideal::principal(Element::from_int(r, m));
  Ideal y = Ideal::unit(r);
  for (const auto& g : i.canonical_generators()) y = ideal_intersect(y, colon_ideal(mr, g));
  return {y.lattice(), m};
}

QElement QuotientRing::one() const { return fractional() ? QElement{Element::one(base.ring).coords(), 1} : QElement{algebra->one, 1}; }

QElement QuotientRing::unit(const Element& r) const {
  if (!(r.ring() == base.ring)) fail(ErrorKind::HandleMismatch, "element of another ring");
  if (fractional()) return {r.coords(), 1};
  return {algebra->group.reduce(r.coords() * unit_map), 1};
}

QElement QuotientRing::add(const QElement& a, const QElement& b) const {
  if (!fractional()) return {algebra->add(a.num, b.num), 1};
  return make_fraction(b.den * a.num + a.den * b.num, a.den * b.den);
}

QElement QuotientRing::scale(const QElement& a, const Integer& k) const {
  if (!fractional()) return {algebra->group.reduce(k * a.num), 1};
  return make_fraction(k * a.num, a.den);
}

QElement QuotientRing::sub(const QElement& a, const QElement& b) const { return add(a, scale(b, -1)); }

QElement QuotientRing::mul(const QElement& a, const QElement& b) const {
  if (!fractional()) return {algebra->mul(a.num, b.num), 1};
  Element p = as_element(base.ring, a.num) * as_element(base.ring, b.num);
  return make_fraction(p.coords(), a.den * b.den);
}

bool QuotientRing::in_image(const QElement& x) const {
  if (fractional()) return make_fraction(x.num, x.den).den == 1;
  return express(algebra->group, unit_map, x.num).has_value();
}

std::optional<std::size_t> QuotientRing::level_of(const QElement& x) const {
  for (std::size_t n = 0; n < numerators.size(); ++n) {
    Vec scaled = denominators[n] * x.num;
    bool integral = true;
    for (auto& c : scaled) {
      if (c % x.den != 0) integral = false;
      c /= x.den;
    }
    if (integral && in_subgroup(algebra_of(base.ring)->group, numerators[n], scaled)) return n + 1;
  }
  return std::nullopt;
}

std::vector<QElement> QuotientRing::generators() const {
  std::vector<QElement> out;
  if (!fractional()) {
    for (std::size_t l = 0; l < algebra->dim(); ++l) out.push_back({algebra->basis(l), 1});
    return out;
  }
  for (std::size_t n = 0; n < numerators.size(); ++n)
    for (std::size_t t = 0; t < numerators[n].rows(); ++t) {
      QElement x = make_fraction(numerators[n].row(t), denominators[n]);
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    }
  return out;
}

std::string QuotientRing::to_string(const QElement& x) const {
  if (!fractional()) return vec_string(x.num);
  QElement f = make_fraction(x.num, x.den);
  std::string num = as_element(base.ring, f.num).to_string();
  if (f.den == 1) return num;
  if (num.find_first_of("+-", 1) != std::string::npos) num = "(" + num + ")";
  return num + "/" + gabriel::to_string(f.den);
}

std::string QuotientRing::to_string() const {
  std::string out = "ring of quotients of " + base.ring.to_string() + " [" + gabriel::to_string(kind) + "]";
  if (fractional()) {
    for (std::size_t n = 0; n < numerators.size(); ++n)
      out += "; L_" + std::to_string(n + 1) + " = (1/" + gabriel::to_string(denominators[n]) + ")·" +
             Ideal::from_lattice(base.ring, numerators[n]).to_string();
  } else {
    out += "; order " + gabriel::to_string(algebra->group.order()) + ", kernel of u " + torsion.to_string();
    out += ", u(1) = " + vec_string(unit(Element::one(base.ring)).num);
  }
  return out;
}

namespace {

/// Check that u respects products and the unit on basis elements.
Check check_unit_map(const QuotientRing& q) {
  auto alg = algebra_of(q.base.ring);
  std::vector<std::string> bad;
  if (!(q.unit(Element::one(q.base.ring)) == q.one())) bad.push_back("u(1) ≠ 1");
  for (std::size_t l = 0; l < alg->dim(); ++l)
    for (std::size_t m = 0; m < alg->dim(); ++m) {
      Element a(q.base.ring, alg->basis(l));
      Element b(q.base.ring, alg->basis(m));
      if (!(q.unit(a * b) == q.mul(q.unit(a), q.unit(b))))
        bad.push_back("u(" + a.to_string() + "·" + b.to_string() + ") ≠ u(" + a.to_string() + ")u(" + b.to_string() + ")");
    }
  if (!bad.empty()) return Check::failed(bad);
  return Check::verified("products of " + std::to_string(alg->dim()) + " basis elements");
}

std::vector<std::pair<QElement, QElement>> sample_pairs(const QuotientRing& q, unsigned seed) {
  const auto gens = q.generators();
  std::vector<std::pair<QElement, QElement>> pairs;
  for (const auto& x : gens)
    for (const auto& y : gens) pairs.emplace_back(x, y);
  std::mt19937 rng(seed);
  auto random_element = [&]() {
    if (!q.fractional()) {
      Vec v = q.algebra->group.zero();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Integer& d = q.algebra->group.moduli()[i];
        const long hi = d == 0 ? 6 : static_cast<long>(to_i64(d)) - 1;
        v[i] = std::uniform_int_distribution<long>(0, hi)(rng);
      }
      return QElement{v, 1};
    }
    QElement x{zero_vec(q.one().num.size()), 1};
    std::uniform_int_distribution<long> coeff(-3, 3);
    for (const auto& g : gens) x = q.add(x, q.scale(g, coeff(rng)));
    return x;
  };
  for (int k = 0; k < 20; ++k) {
    QElement x = random_element();
    QElement y = random_element();
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return pairs;
}

/// Products recomputed as morphisms I_a -> R composed through the fibered product.
Check fibered_check_fractions(const QuotientRing& q, unsigned seed) {
  const Ring& r = q.base.ring;
  const AbelianGroup& rg = algebra_of(r)->group;
  const auto levels = q.base.chain(q.depth);
  std::vector<std::string> bad;
  const auto pairs = sample_pairs(q, seed);
  for (const auto& [x, y] : pairs) {
    auto a = q.level_of(x);
    auto b = q.level_of(y);
    if (!a || !b) {
      bad.push_back("sample outside the levels: " + q.to_string(x) + ", " + q.to_string(y));
      continue;
    }
    const IdealModule ia = ideal_module(levels[*a - 1]);
    const IdealModule ib = ideal_module(levels[*b - 1]);
    auto as_map = [&](const QElement& v, const IdealModule& im) {
      Matrix f(im.module.ngens(), rg.ngens());
      for (std::size_t t = 0; t < im.module.ngens(); ++t) {
        QElement p = q.mul(v, {im.inclusion.row(t), 1});
        if (p.den != 1) fail(ErrorKind::NotAMorphism, q.to_string(v) + " does not map its level into R");
        f.set_row(t, p.num);
      }
      return f;
    };
    const Matrix alpha = as_map(x, ia);
    const Matrix beta = as_map(y, ib);
    Matrix kgens = preimage_gens(ib.module.group(), rg, beta, ia.inclusion);
    Ideal k = Ideal::from_lattice(r, kgens * ib.inclusion);
    if (!q.base.contains(k)) {
      bad.push_back("fibered product ideal " + k.to_string() + " is not open");
      continue;
    }
    const QElement xy = q.mul(x, y);
    for (std::size_t t = 0; t < kgens.rows(); ++t) {
      auto c = express(rg, ia.inclusion, kgens.row(t) * beta);
      QElement expected = q.mul(xy, {kgens.row(t) * ib.inclusion, 1});
      if (!c || expected.den != 1 || !(*c * alpha == expected.num)) {
        bad.push_back(q.to_string(x) + " · " + q.to_string(y));
        break;
      }
    }
  }
  if (!bad.empty()) return Check::failed(bad);
  return Check::verified(std::to_string(pairs.size()) + " sampled pairs");
}

}  // namespace

QuotientRing identity_quotient(const TopologyBase& b) {
  if (!b.ring.lattice_backed()) fail(ErrorKind::UnsupportedPresentation, "rings of quotients need a lattice-backed ring");
  QuotientRing q;
  q.base = b;
  q.torsion = Ideal::zero(b.ring);
  auto alg = algebra_of(b.ring);
  if (b.ring.finite()) {
    q.kind = CarrierKind::FiniteRing;
    q.algebra = alg;
    q.unit_map = Matrix::identity(alg->dim());
    q.depth = 1;
  } else {
    q.kind = b.ring.cls() == RingClass::Integers ? CarrierKind::LocalizedPID : CarrierKind::LatticeLocalization;
    q.depth = std::max<std::size_t>(b.depth, 1);
    q.numerators.assign(q.depth, Ideal::unit(b.ring).lattice());
    q.denominators.assign(q.depth, Integer(1));
  }
  q.unit_is_homomorphism = check_unit_map(q);
  q.multiplication = Check::verified("identity carrier");
  return q;
}

QuotientRing ring_of_quotients(const TopologyBase& b, std::size_t depth, unsigned seed) {
  if (!b.ring.lattice_backed()) fail(ErrorKind::UnsupportedPresentation, "rings of quotients need a lattice-backed ring");
  if (depth == 0) fail(ErrorKind::InvalidArgument, "depth must be positive");
  if (all_unit(b)) return identity_quotient(b);
  auto alg = algebra_of(b.ring);
  QuotientRing q;
  q.base = b;
  q.depth = depth;
  if (!b.ring.finite()) {
    if (b.kind != BaseKind::Chain) fail(ErrorKind::ChainRequired, "an infinite ring needs a chain base");
    if (!b.ring.is_domain()) fail(ErrorKind::UnsupportedPresentation, "fraction carriers need a domain");
    q.kind = b.ring.cls() == RingClass::Integers ? CarrierKind::LocalizedPID : CarrierKind::LatticeLocalization;
    q.torsion = Ideal::zero(b.ring);
    for (const auto& level : b.chain(depth)) {
      auto [y, m] = inverse_level(level);
      q.numerators.push_back(std::move(y));
      q.denominators.push_back(std::move(m));
    }
    q.unit_is_homomorphism = check_unit_map(q);
    q.multiplication = fibered_check_fractions(q, seed);
    return q;
  }

  q.kind = CarrierKind::FiniteRing;
  Module regular = Module::free(alg, Side::Right, 1);
  q.torsion = Ideal::from_lattice(b.ring, Matrix::vstack(torsion_submodule(regular, b).submodule.inclusion, alg->group.relations()));
  QuotientAlgebra s = quotient_algebra(alg, q.torsion.lattice(), "R/t(R)");
  std::vector<Matrix> s_actions;
  for (std::size_t l = 0; l < alg->dim(); ++l)
    s_actions.push_back(s.algebra->right_mult(s.algebra->group.reduce(alg->basis(l) * s.projection)));
  const Module smod(alg, Side::Right, s.algebra->group, std::move(s_actions));
  const Ideal imin = least_ideal(b);
  const IdealModule im = ideal_module(imin);
  const HomSpace h = hom(im.module, smod);
  const Matrix sigma_i = s.algebra->group.reduce_rows(im.inclusion * s.projection);
  const AbelianGroup& sg = s.algebra->group;

  // (αβ)(j) = α(i) for σ(i) = β(j), with j ranging over I = the fibered-product ideal.
  auto fibered = [&](const Matrix& alpha, const Matrix& beta) {
    Matrix out(im.module.ngens(), sg.ngens());
    for (std::size_t t = 0; t < im.module.ngens(); ++t) {
      auto c = express(sg, sigma_i, beta.row(t));
      if (!c) fail(ErrorKind::InvalidArgument, "fibered product ideal is smaller than the least open ideal");
      out.set_row(t, sg.reduce(*c * alpha));
    }
    return out;
  };

  auto u = std::make_shared<ZAlgebra>();
  u->name = "ring of quotients of " + b.ring.to_string();
  u->group = h.module.group();
  const std::size_t n = u->group.ngens();
  u->product.assign(n, std::vector<Vec>(n));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      u->product[l][m] = h.coords_of(fibered(h.map_of(u->group.unit(l)), h.map_of(u->group.unit(m))));
  u->one = h.coords_of(sigma_i);
  u->commutative = true;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m) u->commutative = u->commutative && u->product[l][m] == u->product[m][l];
  q.algebra = u;

  q.unit_map = Matrix(alg->dim(), n);
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    Matrix f(im.module.ngens(), sg.ngens());
    for (std::size_t t = 0; t < im.module.ngens(); ++t)
      f.set_row(t, sg.reduce(alg->mul(alg->basis(l), im.inclusion.row(t)) * s.projection));
    q.unit_map.set_row(l, h.coords_of(f));
  }
  q.unit_is_homomorphism = check_unit_map(q);

  std::vector<std::string> bad;
  const auto pairs = sample_pairs(q, seed);
  for (const auto& [x, y] : pairs)
    if (!(h.coords_of(fibered(h.map_of(x.num), h.map_of(y.num))) == q.mul(x, y).num))
      bad.push_back(q.to_string(x) + " · " + q.to_string(y));
  q.multiplication = bad.empty() ? Check::verified(std::to_string(pairs.size()) + " sampled pairs") : Check::failed(bad);
  return q;
}

std::optional<Certificate> find_certificate(const Ideal& i, const QuotientRing& u) {
  if (!(i.ring() == u.base.ring)) fail(ErrorKind::HandleMismatch, "ideal over another ring");
  std::vector<Element> s;
  for (const auto& g : i.canonical_generators())
    if (!g.is_zero()) s.push_back(g);
  if (s.empty()) return std::nullopt;
  const QElement one = u.one();
  if (!u.fractional()) {
    const ZAlgebra& a = *u.algebra;
    Matrix rows(0, a.dim());
    for (const auto& sk : s)
      for (std::size_t l = 0; l < a.dim(); ++l) rows.append_row(a.mul(u.unit(sk).num, a.basis(l)));
    auto c = express(a.group, rows, one.num);
    if (!c) return std::nullopt;
    Certificate cert{i, s, {}};
    for (std::size_t k = 0; k < s.size(); ++k) {
      Vec v(c->begin() + static_cast<long>(k * a.dim()), c->begin() + static_cast<long>((k + 1) * a.dim()));
      cert.v.push_back({a.group.reduce(v), 1});
    }
    return cert;
  }
  const Ring& r = u.base.ring;
  for (std::size_t n = 0; n < u.numerators.size(); ++n) {
    const Matrix& y = u.numerators[n];
    Matrix rows(0, one.num.size());
    for (const auto& sk : s)
      for (std::size_t t = 0; t < y.rows(); ++t) rows.append_row((sk * Element(r, y.row(t))).coords());
    auto c = solve_left(rows, u.denominators[n] * one.num);
    if (!c) continue;
    Certificate cert{i, s, {}};
    for (std::size_t k = 0; k < s.size(); ++k) {
      Vec num = zero_vec(one.num.size());
      for (std::size_t t = 0; t < y.rows(); ++t) num = num + (*c)[k * y.rows() + t] * y.row(t);
      cert.v.push_back(make_fraction(num, u.denominators[n]));
    }
    return cert;
  }
  return std::nullopt;
}

std::string to_string(const Certificate& c, const QuotientRing& u) {
  std::string out;
  for (std::size_t k = 0; k < c.s.size(); ++k)
    out += (k ? " + " : "") + c.s[k].to_string() + "·" + u.to_string(c.v[k]);
  return out + " = 1";
}

PerfectReport check_perfect(const TopologyBase& b, const QuotientRing& u) {
  if (!(b.ring == u.base.ring)) fail(ErrorKind::HandleMismatch, "base and ring of quotients over different rings");
  PerfectReport rep;
  std::vector<std::string> bad;
  for (const auto& i : b.ideals) {
    auto c = find_certificate(i, u);
    if (c) {
      rep.certificates.push_back(std::move(*c));
    } else {
      bad.push_back(i.to_string() + "·U ≠ U");
    }
  }
  const std::string bound = std::to_string(b.ideals.size()) + " base ideals, carrier depth " + std::to_string(u.depth);
  rep.verdict = bad.empty() ? Check::verified(bound) : Check::failed(bad, bound);
  return rep;
}

AnnihilatorReport annihilator_preimage(const Certificate& c, const QuotientRing& u) {
  const Ring& r = u.base.ring;
  if (c.s.empty() || c.s.size() != c.v.size()) fail(ErrorKind::BadCertificate, "certificate lists do not match");
  QElement sum{zero_vec(u.one().num.size()), 1};
  for (std::size_t k = 0; k < c.s.size(); ++k) {
    if (!c.ideal.contains(c.s[k])) fail(ErrorKind::BadCertificate, c.s[k].to_string() + " is not in " + c.ideal.to_string());
    sum = u.add(sum, u.mul(u.unit(c.s[k]), c.v[k]));
  }
  if (!(sum == u.one())) fail(ErrorKind::BadCertificate, "Σ s_k v_k = " + u.to_string(sum) + " ≠ 1");
  AnnihilatorReport rep;
  if (u.fractional()) {
    rep.annihilator = Ideal::unit(r);
    for (const auto& v : c.v) {
      QElement f = make_fraction(v.num, v.den);
      rep.annihilator = ideal_intersect(rep.annihilator, colon_ideal(Ideal::principal(Element::from_int(r, f.den)), Element(r, f.num)));
    }
  } else {
    std::vector<Element> elems;
    for (const auto& x : enumerate(r))
      if (std::all_of(c.v.begin(), c.v.end(), [&](const QElement& v) { return u.in_image(u.mul(v, u.unit(x))); }))
        elems.push_back(x);
    rep.annihilator = Ideal(r, elems);
  }
  const std::string claim = rep.annihilator.to_string() + " ⊆ " + c.ideal.to_string();
  rep.containment = c.ideal.contains(rep.annihilator) ? Check::verified(claim) : Check::failed({"not " + claim});
  return rep;
}

Module carrier_module(const QuotientRing& u, Side side, std::size_t level) {
  auto alg = algebra_of(u.base.ring);
  std::vector<Matrix> actions;
  if (!u.fractional()) {
    for (std::size_t l = 0; l < alg->dim(); ++l) {
      const Vec ub = u.unit(Element(u.base.ring, alg->basis(l))).num;
      actions.push_back(side == Side::Right ? u.algebra->right_mult(ub) : u.algebra->left_mult(ub));
    }
    return Module(alg, side, u.algebra->group, std::move(actions));
  }
  const std::size_t n = level == 0 ? u.numerators.size() : level;
  if (n > u.numerators.size()) fail(ErrorKind::DepthMismatch, "level beyond the carrier depth");
  const Matrix& y = u.numerators[n - 1];
  for (std::size_t l = 0; l < alg->dim(); ++l) {
    Matrix a(y.rows(), y.rows());
    for (std::size_t t = 0; t < y.rows(); ++t) {
      auto c = solve_left(y, alg->mul(y.row(t), alg->basis(l)));
      if (!c) fail(ErrorKind::InvalidArgument, "level is not a submodule");
      a.set_row(t, *c);
    }
    actions.push_back(std::move(a));
  }
  return Module(alg, side, AbelianGroup::free(y.rows()), std::move(actions));
}

Vec carrier_coords(const QuotientRing& u, const QElement& x, std::size_t level) {
  if (!u.fractional()) return u.algebra->group.reduce(x.num);
  const std::size_t n = level == 0 ? u.numerators.size() : level;
  if (n > u.numerators.size()) fail(ErrorKind::DepthMismatch, "level beyond the carrier depth");
  Vec scaled = u.denominators[n - 1] * x.num;
  for (auto& c : scaled) {
    if (c % x.den != 0) fail(ErrorKind::InvalidArgument, u.to_string(x) + " lies outside level " + std::to_string(n));
    c /= x.den;
  }
  auto c = solve_left(u.numerators[n - 1], scaled);
  if (!c) fail(ErrorKind::InvalidArgument, u.to_string(x) + " lies outside level " + std::to_string(n));
  return *c;
}

Check multiplication_bijective(const QuotientRing& u) {
  if (!u.fractional()) {
    const ZAlgebra& a = *u.algebra;
    TensorProduct t = tensor(carrier_module(u, Side::Right), carrier_module(u, Side::Left));
    const std::size_t k = a.dim();
    Matrix f(t.module.ngens(), k);
    for (std::size_t c = 0; c < t.module.ngens(); ++c) {
      Vec raw = t.presented.to_raw.row(c);
      Vec v = a.group.zero();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (raw[i * k + j] != 0) v = v + raw[i * k + j] * a.mul(a.basis(i), a.basis(j));
      f.set_row(c, a.group.reduce(v));
    }
    const bool inj = is_injective(t.module.group(), a.group, f);
    const bool sur = is_surjective(t.module.group(), a.group, f);
    if (inj && sur) return Check::verified("U ⊗ U of order " + gabriel::to_string(t.module.group().order()));
    return Check::failed({std::string(inj ? "" : "not injective") + (inj || sur ? "" : ", ") + (sur ? "" : "not surjective")});
  }
  const Ring& r = u.base.ring;
  const AbelianGroup& rg = algebra_of(r)->group;
  std::vector<std::string> bad;
  for (std::size_t n = 1; n <= u.numerators.size(); ++n) {
    const Matrix& y = u.numerators[n - 1];
    Module l = carrier_module(u, Side::Right, n);
    TensorProduct t = tensor(l, l);
    const std::size_t k = y.rows();
    Matrix f(t.module.ngens(), rg.ngens());
    for (std::size_t c = 0; c < t.module.ngens(); ++c) {
      Vec raw = t.presented.to_raw.row(c);
      Vec v = rg.zero();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (raw[i * k + j] != 0) v = v + raw[i * k + j] * (Element(r, y.row(i)) * Element(r, y.row(j))).coords();
      f.set_row(c, v);
    }
    const Ideal yy = Ideal::from_lattice(r, y);
    const Matrix square = ideal_product(yy, yy).lattice();
    if (!is_injective(t.module.group(), rg, f) || !same_subgroup(rg, f, square))
      bad.push_back("level " + std::to_string(n));
  }
  if (!bad.empty()) return Check::failed(bad);
  return Check::verified("L_n ⊗ L_n ≅ L_n·L_n for n ≤ " + std::to_string(u.numerators.size()));
}

}  // namespace gabriel
