#pragma once

// Test-only brute-force oracles, independent of the solver code paths.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ktrans/convex.hpp"
#include "ktrans/random.hpp"

namespace oracle {

/// min ||P a|| over the coefficient simplex.  A coarse start (exhaustive grid
/// up to three vertices, a lattice of `step`-sized pair moves beyond) is
/// polished by exact line searches along pair exchanges e_j - e_i, which
/// converge on this convex quadratic.
inline double simplex_grid_min_norm(const Eigen::MatrixXd& pts, double step = 1e-3) {
  const Eigen::Index m = pts.cols();
  auto value = [&](const Eigen::VectorXd& a) { return (pts * a).squaredNorm(); };
  if (m == 1) return pts.col(0).norm();
  Eigen::VectorXd a = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  double cur = value(a);
  if (m <= 3) {
    const int n = static_cast<int>(std::lround(1.0 / step));
    Eigen::VectorXd g(m);
    for (int i = 0; i <= n; ++i) {
      if (m == 2) {
        g << i * step, 1.0 - i * step;
        if (value(g) < cur) cur = value(g), a = g;
        continue;
      }
      for (int j = 0; i + j <= n; ++j) {
        g << i * step, j * step, 1.0 - (i + j) * step;
        if (value(g) < cur) cur = value(g), a = g;
      }
    }
  } else {
    for (double h = 0.125; h >= step * 0.5; h *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (Eigen::Index i = 0; i < m; ++i) {
          for (Eigen::Index j = 0; j < m; ++j) {
            if (i == j) continue;
            const double move = std::min(h, a(i));
            if (move <= 0.0) continue;
            a(i) -= move;
            a(j) += move;
            const double v = value(a);
            if (v < cur - 1e-15) {
              cur = v;
              improved = true;
            } else {
              a(i) += move;
              a(j) -= move;
            }
          }
        }
      }
    }
  }
  for (int sweep = 0; sweep < 5000; ++sweep) {
    double gain = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (i == j) continue;
        const Eigen::VectorXd p = pts * a;
        const Eigen::VectorXd dir = pts.col(j) - pts.col(i);
        const double dd = dir.squaredNorm();
        if (dd == 0.0) continue;
        const double t = std::clamp(-p.dot(dir) / dd, -a(j), a(i));
        a(i) -= t;
        a(j) += t;
        const double v = value(a);
        gain += cur - v;
        cur = v;
      }
    }
    if (gain <= 1e-18) break;
  }
  return std::sqrt(std::max(cur, 0.0));
}

/// Real affine rank of points given as columns.
inline int affine_rank(const Eigen::MatrixXd& pts, double threshold = 1e-9) {
  if (pts.cols() <= 1) return 0;
  Eigen::MatrixXd centered = pts.rightCols(pts.cols() - 1).colwise() - pts.col(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > threshold * std::max(1.0, svd.singularValues()(0))) ++r;
  return r;
}

/// Central finite difference of f along direction dir.
inline double central_difference(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

/// Middle test for pairwise disjoint convex sets: some line meets a, b, c in
/// this order iff b meets conv(a u c).
inline bool middle_by_hull(const ktrans::Polytope& a, const ktrans::Polytope& b, const ktrans::Polytope& c) {
  std::vector<Eigen::VectorXcd> ac = a.vertices();
  ac.insert(ac.end(), c.vertices().begin(), c.vertices().end());
  return ktrans::polytopes_intersect({b, ktrans::Polytope(a.field(), ac)}).feasible();
}

/// Helly by enumeration: true iff every subfamily of at most `cap` sets has a common point.
inline bool all_small_subfamilies_intersect(const ktrans::Family& fam, std::size_t cap) {
  const std::size_t n = fam.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    ktrans::Family sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(fam[i]);
    if (sub.size() > cap) continue;
    if (!ktrans::polytopes_intersect(sub).feasible()) return false;
  }
  return true;
}

/// Polytopes around Gaussian centres; `radius` controls how often they meet.
inline ktrans::Family random_blobs(std::uint64_t seed, int d, int n, double radius,
                                   ktrans::Field f = ktrans::Field::real, int min_vertices = 1) {
  ktrans::Rng rng(seed);
  ktrans::Family fam;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd c = ktrans::gaussian_vector(rng, d, f);
    const int m = min_vertices + static_cast<int>(rng() % 5);
    std::vector<Eigen::VectorXcd> vs;
    for (int j = 0; j < m; ++j) vs.push_back(c + radius * ktrans::gaussian_vector(rng, d, f));
    fam.emplace_back(f, vs);
  }
  return fam;
}

}  // namespace oracle
