#pragma once

// Seeded scene generators.  Every label is backed by construction (a stored
// planted flat) or by an exact oracle.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktrans/consistency.hpp"
#include "ktrans/convex.hpp"
#include "ktrans/core.hpp"
#include "ktrans/engines.hpp"
#include "ktrans/error.hpp"
#include "ktrans/random.hpp"

namespace ktrans {

enum class Label { yes, no, unknown };

inline std::string label_name(Label l) {
  switch (l) {
    case Label::yes: return "yes";
    case Label::no: return "no";
    case Label::unknown: return "unknown";
  }
  return "unknown";
}

struct SceneLabel {
  Label value = Label::unknown;
  std::string provenance;
};

struct Scene {
  Field field = Field::real;
  int d = 1;
  int k = 0;
  Family sets;
  std::optional<PointAssignment> assignment;
  std::optional<AffineFlat> planted;
  std::optional<SceneLabel> label;
};

/// Dimensional consistency, and a planted flat must stab every set within 1e-8.
inline void validate_scene(const Scene& s) {
  if (s.d < 1) throw Error(Errc::invariant_violation, "scene dimension must be positive");
  if (s.k < 0 || s.k >= s.d) throw Error(Errc::invariant_violation, "scene needs 0 <= k < d");
  for (std::size_t i = 0; i < s.sets.size(); ++i) {
    if (s.sets[i].dim() != s.d) throw Error(Errc::invariant_violation, "set " + std::to_string(i) + " has the wrong dimension");
    if (s.sets[i].field() != s.field) throw Error(Errc::invariant_violation, "set " + std::to_string(i) + " has the wrong field");
  }
  if (s.assignment) {
    if (s.assignment->field != s.field || s.assignment->k != s.k)
      throw Error(Errc::invariant_violation, "assignment field or k differs from the scene");
    try {
      check_assignment(*s.assignment, s.sets.size());
    } catch (const Error& e) {
      throw Error(Errc::invariant_violation, std::string("assignment: ") + e.what());
    }
  }
  if (s.planted) {
    if (s.planted->dim() != s.d || s.planted->k() != s.k || s.planted->field() != s.field)
      throw Error(Errc::invariant_violation, "planted flat does not match the scene");
    for (std::size_t i = 0; i < s.sets.size(); ++i)
      if (!flat_stabs(*s.planted, s.sets[i], tol::feasibility).stabs)
        throw Error(Errc::invariant_violation, "planted flat misses set " + std::to_string(i));
  }
}

struct GenSpec {
  std::uint64_t seed = 0;
  int d = 2;
  int k = 1;
  int n = 4;
  int vertices = 4;     // per set
  double spread = 1.0;  // scale of flat placement; set radius is 0.3 * spread
  Field field = Field::real;
};

inline void check_spec(const GenSpec& g) {
  if (g.n < 1) throw Error(Errc::invalid_input, "need at least one set");
  if (g.d < 1 || g.k < 0 || g.k >= g.d) throw Error(Errc::invalid_range, "need 0 <= k < d");
  if (g.vertices < 1) throw Error(Errc::invalid_input, "need at least one vertex per set");
  if (!(g.spread > 0.0)) throw Error(Errc::invalid_input, "spread must be positive");
}

namespace detail {

/// m vertices around `anchor` whose hull contains it: random offsets recentred
/// so that a random convex combination of them is zero.
inline std::vector<CVec> polytope_around(Rng& rng, const CVec& anchor, int m, double radius, Field f) {
  std::vector<CVec> off;
  RVec alpha(m);
  for (int j = 0; j < m; ++j) {
    off.push_back(radius * gaussian_vector(rng, static_cast<int>(anchor.size()), f) / 2.0);
    alpha(j) = uniform(rng, 0.1, 1.0);
  }
  alpha /= alpha.sum();
  CVec mean = CVec::Zero(anchor.size());
  for (int j = 0; j < m; ++j) mean += alpha(j) * off[static_cast<std::size_t>(j)];
  std::vector<CVec> out;
  for (int j = 0; j < m; ++j) out.push_back(anchor + off[static_cast<std::size_t>(j)] - mean);
  if (m == 1) out.front() = anchor;
  return out;
}

}  // namespace detail

/// Sets surrounding anchor points of a random k-flat; the flat and the flat
/// coordinates of the anchors (as the assignment) are stored.
inline Scene gen_planted(const GenSpec& g) {
  check_spec(g);
  Rng rng(g.seed);
  const Field f = g.field;
  const CVec base = g.spread * gaussian_vector(rng, g.d, f);
  const CMat dirs = g.k > 0 ? random_frame(rng, g.d, g.k, f).matrix() : CMat(g.d, 0);
  AffineFlat fl(f, base, dirs);

  Scene s;
  s.field = f;
  s.d = g.d;
  s.k = g.k;
  PointAssignment a;
  a.field = f;
  a.k = g.k;
  for (int i = 0; i < g.n; ++i) {
    const CVec coords = g.spread * gaussian_vector(rng, g.k, f);
    const CVec anchor = fl.at(coords);
    s.sets.emplace_back(f, detail::polytope_around(rng, anchor, g.vertices, 0.3 * g.spread, f));
    a.points.push_back(fl.coordinates(anchor));
    if (f == Field::real) a.points.back() = a.points.back().real().cast<cplx>();
    a.phi.push_back(static_cast<std::size_t>(i));
  }
  s.assignment = a;
  s.planted = fl;
  s.label = SceneLabel{Label::yes, "planted flat"};
  validate_scene(s);
  return s;
}

/// Gaussian singletons, re-sampled until in general position; labelled by the exact rank oracle.
/// With `on_flat`, the points lie exactly on a k-flat (small dyadic coordinates, exact arithmetic).
inline Scene gen_singletons(const GenSpec& g, bool on_flat = false) {
  check_spec(g);
  Rng rng(g.seed);
  const Field f = g.field;
  std::vector<CVec> pts;
  if (on_flat) {
    auto small_int = [&](int lim) { return static_cast<double>(static_cast<int>(rng() % (2 * lim + 1)) - lim); };
    auto int_vec = [&](int lim) {
      CVec v(g.d);
      for (int c = 0; c < g.d; ++c) v(c) = cplx(small_int(lim), f == Field::complex ? small_int(lim) : 0.0);
      return v;
    };
    const CVec base = int_vec(8) / 8.0;
    std::vector<CVec> dirs;
    for (int j = 0; j < g.k; ++j) dirs.push_back(int_vec(3));
    for (int i = 0; i < g.n; ++i) {
      CVec p = base;
      for (const auto& u : dirs) p += cplx(small_int(4), f == Field::complex ? small_int(4) : 0.0) * u;
      pts.push_back(p);
    }
  } else {
    const int want = std::min(g.n - 1, g.d);
    for (;;) {
      pts.clear();
      for (int i = 0; i < g.n; ++i) pts.push_back(g.spread * gaussian_vector(rng, g.d, f));
      // general position: full numerical F-rank of the differences
      CMat diff(g.d, std::max(0, g.n - 1));
      for (int i = 1; i < g.n; ++i) diff.col(i - 1) = pts[static_cast<std::size_t>(i)] - pts[0];
      if (g.n == 1) break;
      Eigen::JacobiSVD<CMat> svd(diff);
      const auto& sv = svd.singularValues();
      if (sv(want - 1) > tol::rank * std::max(1.0, sv(0))) break;
    }
  }

  Scene s;
  s.field = f;
  s.d = g.d;
  s.k = g.k;
  for (const auto& p : pts) s.sets.push_back(Polytope::singleton(f, p));
  PointAssignment a;
  a.field = f;
  a.k = g.k;
  for (int i = 0; i < g.n; ++i) {
    a.points.push_back(gaussian_vector(rng, g.k, f));
    a.phi.push_back(static_cast<std::size_t>(i));
  }
  s.assignment = a;
  const bool yes = point_family_transversal_exact(pts, g.k);
  s.label = SceneLabel{yes ? Label::yes : Label::no, "exact affine rank"};
  validate_scene(s);
  return s;
}

enum class DisjointMode { random, planted, triangle_corners };

/// Regular octagon of the given radius (a disk stand-in).
inline Polytope octagon(double cx, double cy, double radius) {
  std::vector<CVec> v;
  for (int j = 0; j < 8; ++j) {
    const double t = 2.0 * M_PI * j / 8.0;
    CVec p(2);
    p << cx + radius * std::cos(t), cy + radius * std::sin(t);
    v.push_back(p);
  }
  return Polytope(Field::real, std::move(v));
}

/// Pairwise disjoint polygons in R^2, labelled by the exact line-transversal sweep.
/// triangle_corners: unit octagons centred at (0,0), (10,0), (5,8.66); every
/// line misses one of them since the triangle's smallest width exceeds 2.
inline Scene gen_disjoint_2d(const GenSpec& g, DisjointMode mode) {
  check_spec(g);
  if (g.d != 2 || g.field != Field::real) throw Error(Errc::unsupported_dimension, "disjoint scenes live in R^2");
  Rng rng(g.seed);
  Scene s;
  s.field = Field::real;
  s.d = 2;
  s.k = 1;
  if (mode == DisjointMode::triangle_corners) {
    s.sets = {octagon(0.0, 0.0, 1.0), octagon(10.0, 0.0, 1.0), octagon(5.0, 8.66, 1.0)};
  } else {
    const double r = 0.3 * g.spread;
    std::optional<AffineFlat> line;
    CVec lbase(2), ldir(2);
    if (mode == DisjointMode::planted) {
      const double ang = uniform(rng, 0.0, M_PI);
      lbase << g.spread * gaussian(rng), g.spread * gaussian(rng);
      ldir << std::cos(ang), std::sin(ang);
      line = AffineFlat(Field::real, lbase, CMat(ldir));
    }
    int rejections = 0;
    while (static_cast<int>(s.sets.size()) < g.n) {
      CVec centre(2);
      if (line) {
        centre = line->at(CVec::Constant(1, cplx(uniform(rng, -1.5, 1.5) * g.spread * g.n, 0.0)));
      } else {
        centre << uniform(rng, -1.0, 1.0) * g.spread * g.n, uniform(rng, -1.0, 1.0) * g.spread * g.n;
      }
      Polytope cand(Field::real, detail::polytope_around(rng, centre, g.vertices, r, Field::real));
      bool ok = true;
      for (const auto& p : s.sets)
        if (polytopes_intersect({p, cand}).feasible()) {
          ok = false;
          break;
        }
      if (ok) {
        s.sets.push_back(std::move(cand));
      } else if (++rejections >= 10000) {
        throw Error(Errc::generation_timeout, "no disjoint placement after 10000 rejections");
      }
    }
    if (line) s.planted = line;
  }
  const auto exact = hyperplane_transversal_2d_exact(s.sets);
  s.label = SceneLabel{exact ? Label::yes : Label::no, "exact line sweep"};
  validate_scene(s);
  return s;
}

}  // namespace ktrans
