#pragma once

// Deterministic SVG figures of planar scenes (or of a chosen 2-plane
// projection): axes, then set hulls, then the flat, then witness points.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/instances.hpp"

namespace ktrans {

struct SvgOptions {
  std::optional<AffineFlat> flat;
  std::vector<CVec> witness;
  std::optional<RMat> projection;  // 2 x (real dimension); required unless the scene is planar
};

namespace detail {

using P2 = std::array<double, 2>;

inline std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const P2& o, const P2& a, const P2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  if (std::string(buf) == "-0.0000") return "0.0000";
  return buf;
}

}  // namespace detail

inline std::string emit_svg(const Scene& sc, const SvgOptions& opt = {}) {
  const int rdim = sc.d * real_dim(sc.field);
  RMat proj;
  if (opt.projection) {
    proj = *opt.projection;
    if (proj.rows() != 2 || proj.cols() != rdim) throw Error(Errc::dimension_mismatch, "projection must be 2 x real dimension");
  } else if (rdim == 2) {
    proj = RMat::Identity(2, 2);
  } else {
    throw Error(Errc::unsupported_dimension, "non-planar scene needs a projection");
  }
  auto to2 = [&](const CVec& v) {
    const RVec p = proj * realify(v, sc.field);
    return detail::P2{p(0), p(1)};
  };

  std::vector<std::vector<detail::P2>> sets;
  double lo[2] = {-1.0, -1.0}, hi[2] = {1.0, 1.0};
  bool any = false;
  for (const auto& s : sc.sets) {
    std::vector<detail::P2> pts;
    for (const auto& v : s.vertices()) {
      const auto p = to2(v);
      for (int c = 0; c < 2; ++c) {
        lo[c] = any ? std::min(lo[c], p[c]) : p[c];
        hi[c] = any ? std::max(hi[c], p[c]) : p[c];
      }
      any = true;
      pts.push_back(p);
    }
    sets.push_back(detail::convex_hull(pts));
  }
  // square world window with a 10% margin
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9}) * 1.2;
  const double cx = (lo[0] + hi[0]) / 2, cy = (lo[1] + hi[1]) / 2;
  const double x0 = cx - span / 2, y0 = cy - span / 2;
  auto sx = [&](double x) { return (x - x0) / span * 800.0; };
  auto sy = [&](double y) { return 800.0 - (y - y0) / span * 800.0; };
  auto pt = [&](const detail::P2& p) { return detail::fmt4(sx(p[0])) + "," + detail::fmt4(sy(p[1])); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
  o << "<line class=\"axis\" x1=\"0.0000\" y1=\"" << detail::fmt4(sy(0.0)) << "\" x2=\"800.0000\" y2=\""
    << detail::fmt4(sy(0.0)) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  o << "<line class=\"axis\" x1=\"" << detail::fmt4(sx(0.0)) << "\" y1=\"0.0000\" x2=\"" << detail::fmt4(sx(0.0))
    << "\" y2=\"800.0000\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  for (const auto& h : sets) {
    o << "<polygon class=\"set\" points=\"";
    for (std::size_t i = 0; i < h.size(); ++i) o << (i ? " " : "") << pt(h[i]);
    o << "\" fill=\"#4a90d9\" fill-opacity=\"0.35\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
  }
  if (opt.flat) {
    const auto& fl = *opt.flat;
    const auto b = to2(fl.base());
    if (fl.k() == 0) {
      o << "<circle class=\"flat\" cx=\"" << detail::fmt4(sx(b[0])) << "\" cy=\"" << detail::fmt4(sy(b[1]))
        << "\" r=\"5\" fill=\"#c0392b\"/>\n";
    } else if (fl.k() * real_dim(fl.field()) == 1) {
      const RVec u = proj * realify(fl.dirs().col(0), fl.field());
      const double len = u.norm();
      if (len > 1e-12) {
        const double t = span * 2.0 / len;
        const detail::P2 p{b[0] - t * u(0), b[1] - t * u(1)}, q{b[0] + t * u(0), b[1] + t * u(1)};
        o << "<line class=\"flat\" x1=\"" << detail::fmt4(sx(p[0])) << "\" y1=\"" << detail::fmt4(sy(p[1]))
          << "\" x2=\"" << detail::fmt4(sx(q[0])) << "\" y2=\"" << detail::fmt4(sy(q[1]))
          << "\" stroke=\"#c0392b\" stroke-width=\"2\" stroke-dasharray=\"8 4\"/>\n";
      }
    }
  }
  for (const auto& w : opt.witness) {
    const auto p = to2(w);
    o << "<circle class=\"witness\" cx=\"" << detail::fmt4(sx(p[0])) << "\" cy=\"" << detail::fmt4(sy(p[1]))
      << "\" r=\"3\" fill=\"#27ae60\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ktrans
