#pragma once

// Nearest point of a polytope conv{p_1..p_m} to the origin via Wolfe's
// algorithm: major cycles add the vertex most opposed to the current point,
// minor cycles move toward the affine minimizer of the active corral and drop
// vertices whose weight reaches zero.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ktrans/core.hpp"
#include "ktrans/error.hpp"

namespace ktrans {

struct MinNormResult {
  RVec point;         // realified nearest point
  RVec coefficients;  // convex weights over the input vertices
  std::size_t major_cycles = 0;

  double squared_norm() const { return point.squaredNorm(); }
};

struct WolfeOptions {
  double z1 = 1e-12;  // major-cycle optimality, relative to the largest squared vertex norm
  double z2 = 1e-12;  // positivity of affine weights
  double z3 = 1e-10;  // weights below this are dropped
  std::size_t max_iterations = 100000;
};

namespace detail {

// Affine minimizer of the columns of ps: argmin ||ps v||^2 s.t. sum v = 1.
inline RVec affine_minimizer(const RMat& ps) {
  const Eigen::Index s = ps.cols();
  RMat kkt = RMat::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = ps.transpose() * ps;
  kkt.block(0, s, s, 1).setOnes();
  kkt.block(s, 0, 1, s).setOnes();
  RVec rhs = RVec::Zero(s + 1);
  rhs(s) = 1.0;
  RVec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  RVec v = sol.head(s);
  const double sum = v.sum();
  if (sum != 0.0) v /= sum;
  return v;
}

}  // namespace detail

/// Wolfe's minimum-norm-point algorithm; vertices are the columns of `pts`.
inline MinNormResult min_norm_point(const RMat& pts, const WolfeOptions& opt = {}) {
  const Eigen::Index m = pts.cols();
  if (m == 0) throw Error(Errc::invalid_input, "min_norm_point needs at least one vertex");
  if (!pts.allFinite()) throw Error(Errc::invalid_input, "min_norm_point got non-finite vertices");

  const RVec sq = pts.colwise().squaredNorm().transpose();
  const double scale = std::max(sq.maxCoeff(), 1e-300);

  Eigen::Index start = 0;
  sq.minCoeff(&start);
  std::vector<Eigen::Index> corral{start};
  RVec w = RVec::Ones(1);
  RVec x = pts.col(start);

  auto corral_points = [&] {
    RMat ps(pts.rows(), static_cast<Eigen::Index>(corral.size()));
    for (std::size_t i = 0; i < corral.size(); ++i) ps.col(static_cast<Eigen::Index>(i)) = pts.col(corral[i]);
    return ps;
  };

  std::size_t iter = 0;
  std::size_t majors = 0;
  for (;;) {
    if (++iter > opt.max_iterations) throw Error(Errc::iteration_limit, "Wolfe iteration cap reached");
    ++majors;

    const RVec dots = pts.transpose() * x;
    Eigen::Index j = 0;
    const double best = dots.minCoeff(&j);
    const double xx = x.squaredNorm();
    if (xx - best <= opt.z1 * scale) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;

    corral.push_back(j);
    w.conservativeResize(w.size() + 1);
    w(w.size() - 1) = 0.0;

    for (;;) {
      if (++iter > opt.max_iterations) throw Error(Errc::iteration_limit, "Wolfe iteration cap reached");
      const RMat ps = corral_points();
      const RVec v = detail::affine_minimizer(ps);
      if ((v.array() > opt.z2).all()) {
        w = v;
        x = ps * w;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) <= opt.z2 && w(i) - v(i) > 0.0) theta = std::min(theta, w(i) / (w(i) - v(i)));
      }
      w = (1.0 - theta) * w + theta * v;
      for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) < opt.z3) w(i) = 0.0;

      std::vector<Eigen::Index> kept;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (w(static_cast<Eigen::Index>(i)) > 0.0) {
          kept.push_back(corral[i]);
          kept_w.push_back(w(static_cast<Eigen::Index>(i)));
        }
      }
      if (kept.empty()) {
        // cannot happen in exact arithmetic; keep the heaviest vertex
        Eigen::Index arg = 0;
        v.maxCoeff(&arg);
        kept.push_back(corral[static_cast<std::size_t>(arg)]);
        kept_w.push_back(1.0);
      }
      corral = kept;
      w = Eigen::Map<RVec>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
      w /= w.sum();
      x = corral_points() * w;
      if (corral.size() == 1) break;
    }
  }

  MinNormResult out;
  out.coefficients = RVec::Zero(m);
  for (std::size_t i = 0; i < corral.size(); ++i) out.coefficients(corral[i]) += w(static_cast<Eigen::Index>(i));
  out.coefficients /= out.coefficients.sum();
  out.point = pts * out.coefficients;
  out.major_cycles = majors;
  return out;
}

inline MinNormResult min_norm_point(const std::vector<CVec>& vertices, Field field, const WolfeOptions& opt = {}) {
  if (vertices.empty()) throw Error(Errc::invalid_input, "min_norm_point needs at least one vertex");
  const auto rows = static_cast<Eigen::Index>(vertices.front().size()) * real_dim(field);
  RMat pts(rows, static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (vertices[j].size() * real_dim(field) != rows)
      throw Error(Errc::dimension_mismatch, "vertices differ in dimension");
    pts.col(static_cast<Eigen::Index>(j)) = realify(vertices[j], field);
  }
  return min_norm_point(pts, opt);
}

/// Smallest value of <point, v_j - point> over the vertices; nonnegative at the optimum.
inline double min_norm_optimality_gap(const RMat& pts, const RVec& point) {
  return (pts.transpose() * point).minCoeff() - point.squaredNorm();
}

}  // namespace ktrans
