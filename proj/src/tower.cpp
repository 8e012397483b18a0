#include "gabriel/tower.hpp"

#include "gabriel/errors.hpp"

namespace gabriel {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::Nonzero: return "Nonzero";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Matrix Tower::composite(std::size_t from, std::size_t to) const {
  Matrix out = Matrix::identity(levels.at(from).ngens());
  if (direction == Direction::Inverse) {
    if (to > from) fail(ErrorKind::MalformedTower, "inverse tower maps go downwards");
    for (std::size_t n = from; n > to; --n) out = compose(levels[n - 1], out, maps[n - 1]);
  } else {
    if (to < from) fail(ErrorKind::MalformedTower, "direct tower maps go upwards");
    for (std::size_t n = from; n < to; ++n) out = compose(levels[n + 1], out, maps[n]);
  }
  return out;
}

void Tower::validate() const {
  if (levels.empty()) fail(ErrorKind::MalformedTower, "tower without levels");
  if (maps.size() + 1 != levels.size()) fail(ErrorKind::MalformedTower, "one map between consecutive levels required");
  for (std::size_t n = 0; n < maps.size(); ++n) {
    const Module& src = direction == Direction::Inverse ? levels[n + 1] : levels[n];
    const Module& dst = direction == Direction::Inverse ? levels[n] : levels[n + 1];
    if (!is_module_map(src, dst, maps[n])) fail(ErrorKind::MalformedTower, "map " + std::to_string(n) + " is not a module map");
  }
}

namespace {

bool same_module(const Module& a, const Module& b) {
  return a.algebra() == b.algebra() && a.side() == b.side() && a.group() == b.group() && a.actions() == b.actions();
}

bool is_iso(const Module& src, const Module& dst, const Matrix& f) {
  return is_injective(src.group(), dst.group(), f) && is_surjective(src.group(), dst.group(), f);
}

Matrix image_rows(const Module& src, const Matrix& f, std::size_t cols) {
  return src.ngens() == 0 ? Matrix(0, cols) : f;
}

}  // namespace

LimReport tower_limits(const Tower& t, std::size_t window) {
  if (t.depth() < 2) fail(ErrorKind::MalformedTower, "tower limits need depth at least 2");
  t.validate();
  const std::size_t k = t.depth();
  LimReport rep;
  rep.depth = k;
  rep.truncation = t.levels.back();

  std::vector<bool> iso(k - 1);
  for (std::size_t n = 0; n + 1 < k; ++n) {
    const Module& src = t.direction == Direction::Inverse ? t.levels[n + 1] : t.levels[n];
    const Module& dst = t.direction == Direction::Inverse ? t.levels[n] : t.levels[n + 1];
    iso[n] = is_iso(src, dst, t.maps[n]);
  }
  std::size_t s = k - 1;
  while (s > 0 && iso[s - 1]) --s;
  if (k - s >= window) {
    rep.stabilized_at = s;
    rep.limit = t.levels[s];
  }

  if (t.direction == Direction::Direct) {
    rep.lim1 = Verdict::Zero;
    rep.lim1_reason = "direct system";
    return rep;
  }

  const Module& base = t.levels.front();
  Matrix prev;
  for (std::size_t n = 0; n < k; ++n) {
    Matrix img = image_rows(t.levels[n], t.composite(n, 0), base.ngens());
    if (base.finite()) {
      rep.witness.push_back(to_string(subgroup(base.group(), img).group.order()));
    } else if (n > 0) {
      Subgroup ps = subgroup(base.group(), prev);
      Matrix rel(0, ps.group.ngens());
      for (std::size_t r = 0; r < img.rows(); ++r) {
        auto c = subgroup_coords(base.group(), ps, img.row(r));
        if (c) rel.append_row(*c);
      }
      AbelianGroup q = quotient(ps.group, rel).group;
      rep.witness.push_back(q.finite() ? to_string(q.order()) : std::string("inf"));
    }
    prev = img;
  }

  bool surjective = true;
  bool finite = true;
  for (std::size_t n = 0; n + 1 < k; ++n) surjective = surjective && is_surjective(t.levels[n + 1].group(), t.levels[n].group(), t.maps[n]);
  for (const auto& l : t.levels) finite = finite && l.finite();
  if (surjective) {
    rep.lim1 = Verdict::Zero;
    rep.lim1_reason = "surjective maps";
    return rep;
  }
  if (finite) {
    rep.lim1 = Verdict::Zero;
    rep.lim1_reason = "finite levels";
    return rep;
  }
  // Mittag-Leffler at the truncation: images into every checkable level agree over the last window.
  bool stable = k > window;
  for (std::size_t n = 0; n + window < k && stable; ++n) {
    const Module& ln = t.levels[n];
    std::vector<Matrix> imgs;
    for (std::size_t m = k - window; m < k; ++m) imgs.push_back(image_rows(t.levels[m], t.composite(m, n), ln.ngens()));
    for (std::size_t i = 1; i < imgs.size(); ++i) stable = stable && same_subgroup(ln.group(), imgs[0], imgs[i]);
  }
  if (stable) {
    rep.lim1 = Verdict::Zero;
    rep.lim1_reason = "images stabilize";
    return rep;
  }
  // Stationary free tail with a map of determinant > 1: the image chain decreases strictly forever.
  bool stationary = k >= window;
  for (std::size_t n = k - window; n + 1 < k && stationary; ++n)
    stationary = same_module(t.levels[n], t.levels[n + 1]) && (n + 2 >= k || t.maps[n] == t.maps[n + 1]);
  const Module& tail = t.levels.back();
  if (stationary && tail.group().free_rank() == tail.ngens() && tail.ngens() > 0) {
    const Matrix& a = t.maps.back();
    Integer det = abs(determinant(a));
    if (det > 1) {
      rep.lim1 = Verdict::Nonzero;
      rep.lim1_reason = "stationary map with determinant " + to_string(det) + " gives strictly decreasing images";
      bool scalar = a == a(0, 0) * Matrix::identity(a.rows());
      if (scalar) rep.limit = Module::zero(tail.algebra(), tail.side());
      return rep;
    }
  }
  rep.lim1 = Verdict::Indeterminate;
  rep.lim1_reason = "no stabilization within depth " + std::to_string(k);
  return rep;
}

}  // namespace gabriel
