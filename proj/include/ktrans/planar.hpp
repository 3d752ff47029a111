#pragma once

// Exact planar line sweeps over critical directions.  A direction u admits a
// line transversal iff the projections onto its normal have a common point;
// that condition only changes at directions of lines through two vertices,
// so testing those directions (plus one axis) is complete for polygons.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/lp.hpp"

namespace ktrans::planar {

struct QPoint {
  Rational x, y;
};

using QPolygon = std::vector<QPoint>;

inline QPolygon to_rational(const Polytope& p) {
  if (p.field() != Field::real || p.dim() != 2) throw Error(Errc::unsupported_dimension, "planar sweep needs sets in R^2");
  QPolygon out;
  for (const auto& v : p.vertices()) out.push_back({Rational(v(0).real()), Rational(v(1).real())});
  return out;
}

inline std::vector<QPolygon> to_rational(const Family& fam) {
  std::vector<QPolygon> out;
  for (const auto& p : fam) out.push_back(to_rational(p));
  return out;
}

inline Rational dot(const QPoint& a, const QPoint& b) { return a.x * b.x + a.y * b.y; }

/// Directions of all lines through two distinct vertices of the given polygons, plus the x axis.
inline std::vector<QPoint> critical_directions(const std::vector<const QPolygon*>& polys) {
  std::vector<QPoint> pts;
  for (const auto* p : polys) pts.insert(pts.end(), p->begin(), p->end());
  std::vector<QPoint> dirs{{Rational(1), Rational(0)}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      QPoint u{pts[j].x - pts[i].x, pts[j].y - pts[i].y};
      if (u.x == 0 && u.y == 0) continue;
      dirs.push_back(u);
    }
  }
  return dirs;
}

/// Normal of the direction u (rotated by +90 degrees).
inline QPoint normal_of(const QPoint& u) { return {-u.y, u.x}; }

struct Interval {
  Rational lo, hi;
};

inline Interval support_interval(const QPolygon& p, const QPoint& n) {
  Interval iv{dot(p.front(), n), dot(p.front(), n)};
  for (const auto& v : p) {
    const Rational s = dot(v, n);
    if (s < iv.lo) iv.lo = s;
    if (s > iv.hi) iv.hi = s;
  }
  return iv;
}

/// Common offsets s of lines <n, x> = s meeting every polygon, if any.
inline std::optional<Interval> stabbing_offsets(const std::vector<const QPolygon*>& polys, const QPoint& n) {
  Interval all = support_interval(*polys.front(), n);
  for (const auto* p : polys) {
    const Interval iv = support_interval(*p, n);
    all.lo = std::max(all.lo, iv.lo);
    all.hi = std::min(all.hi, iv.hi);
  }
  if (all.lo > all.hi) return std::nullopt;
  return all;
}

/// Extent along u of the slice of conv(p) by the line <n, x> = s (the line must meet conv(p)).
/// Every edge of the hull is a vertex pair, so scanning all pairs crossing the level is exact.
inline Interval slice_extent(const QPolygon& p, const QPoint& n, const QPoint& u, const Rational& s) {
  std::optional<Interval> out;
  auto take = [&](const Rational& t) {
    if (!out) {
      out = Interval{t, t};
    } else {
      if (t < out->lo) out->lo = t;
      if (t > out->hi) out->hi = t;
    }
  };
  std::vector<Rational> h, t;
  for (const auto& v : p) {
    h.push_back(dot(v, n));
    t.push_back(dot(v, u));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (h[i] == s) take(t[i]);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if ((h[i] < s && h[j] > s) || (h[i] > s && h[j] < s)) {
        const Rational lam = (s - h[i]) / (h[j] - h[i]);
        take(t[i] + lam * (t[j] - t[i]));
      }
    }
  }
  if (!out) throw Error(Errc::invariant_violation, "slice of a polygon missed by the line");
  return *out;
}

/// A line {x : <n, x> = s} with exact data.
struct QLine {
  QPoint u;  // direction
  QPoint n;  // normal
  Rational s;
};

/// Some line meeting all polygons, or nothing (exact and complete).
inline std::optional<QLine> find_line_transversal(const std::vector<const QPolygon*>& polys) {
  if (polys.empty()) return QLine{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}, Rational(0)};
  for (const auto& u : critical_directions(polys)) {
    const QPoint n = normal_of(u);
    if (auto iv = stabbing_offsets(polys, n)) return QLine{u, n, (iv->lo + iv->hi) / 2};
  }
  return std::nullopt;
}

/// Bitmask over {0,1,2} of which polygon can be the middle one along a line
/// transversal of the three.  Polygons must be pairwise disjoint.  Every line
/// transversal in one connected component induces the same order, and each
/// component contains a critical direction, so the scan is complete.
inline unsigned possible_middles(const QPolygon& a, const QPolygon& b, const QPolygon& c) {
  const std::vector<const QPolygon*> polys{&a, &b, &c};
  unsigned mask = 0;
  for (const auto& u : critical_directions(polys)) {
    const QPoint n = normal_of(u);
    const auto iv = stabbing_offsets(polys, n);
    if (!iv) continue;
    const Rational s = (iv->lo + iv->hi) / 2;
    std::array<std::pair<Rational, int>, 3> order;
    for (int i = 0; i < 3; ++i) order[static_cast<std::size_t>(i)] = {slice_extent(*polys[static_cast<std::size_t>(i)], n, u, s).lo, i};
    std::sort(order.begin(), order.end());
    mask |= 1u << order[1].second;
    if (mask == 7u) break;
  }
  return mask;
}

}  // namespace ktrans::planar
