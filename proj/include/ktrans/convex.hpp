#pragma once

// Certified convex feasibility kernels built on the LP and Wolfe solvers:
// polytope intersection, flat stabbing, Caratheodory reduction and the
// scaled-dependency system asking whether a tuple of affine dependencies can
// be realized, after nonnegative per-set rescaling, by points of the sets.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/lp.hpp"
#include "ktrans/min_norm.hpp"

namespace ktrans {

// ---------------------------------------------------------------------------
// Intersection of polytopes.

struct IntersectionResult {
  FeasibilityOutcome outcome;
  LpProblem problem;  // kept so the certificate can be re-validated
  CVec point;         // common point when feasible

  bool feasible() const { return outcome.feasible(); }
};

/// One LP over per-polytope convex weights whose reconstructions equal a free point x.
inline IntersectionResult polytopes_intersect(const std::vector<Polytope>& ps) {
  check_family(ps, "polytope list");
  const Field f = ps.front().field();
  const int rd = real_dim(f);
  const Eigen::Index dimr = ps.front().dim() * rd;

  Eigen::Index nlam = 0;
  for (const auto& p : ps) nlam += static_cast<Eigen::Index>(p.size());
  const Eigen::Index ncols = nlam + dimr;
  const Eigen::Index nrows = static_cast<Eigen::Index>(ps.size()) * (1 + dimr);

  LpProblem lp;
  lp.A = RMat::Zero(nrows, ncols);
  lp.b = RVec::Zero(nrows);
  lp.nonneg.assign(static_cast<std::size_t>(ncols), true);
  for (Eigen::Index c = nlam; c < ncols; ++c) lp.nonneg[static_cast<std::size_t>(c)] = false;

  Eigen::Index col = 0;
  Eigen::Index row = 0;
  for (const auto& p : ps) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const RVec v = realify(p.vertex(j), f);
      lp.A(row, col) = 1.0;
      lp.A.block(row + 1, col, dimr, 1) = v;
      ++col;
    }
    lp.b(row) = 1.0;
    lp.A.block(row + 1, nlam, dimr, dimr) = -RMat::Identity(dimr, dimr);
    row += 1 + dimr;
  }

  IntersectionResult out{lp_feasible(lp), std::move(lp), CVec()};
  if (out.feasible()) out.point = complexify(out.outcome.point.tail(dimr), f);
  return out;
}

// ---------------------------------------------------------------------------
// Flat stabbing.

struct StabResult {
  bool stabs = false;
  double distance = 0.0;
  CVec point;          // nearest point of the polytope to the flat
  RVec coefficients;   // its convex weights over the polytope vertices
};

/// Euclidean distance between a polytope and a flat, decided at `tolerance`.
inline StabResult flat_stabs(const AffineFlat& fl, const Polytope& p, double tolerance = tol::stab) {
  if (fl.dim() != p.dim()) throw Error(Errc::dimension_mismatch, "flat and polytope differ in dimension");
  if (fl.field() != p.field()) throw Error(Errc::field_mismatch, "flat and polytope differ in field");
  std::vector<CVec> normals;
  normals.reserve(p.size());
  for (const auto& v : p.vertices()) normals.push_back(fl.normal_component(v));
  const MinNormResult mn = min_norm_point(normals, p.field());

  StabResult out;
  out.coefficients = mn.coefficients;
  out.point = CVec::Zero(p.dim());
  for (std::size_t j = 0; j < p.size(); ++j) out.point += mn.coefficients(static_cast<Eigen::Index>(j)) * p.vertex(j);
  out.distance = std::sqrt(mn.squared_norm());
  out.stabs = out.distance <= tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Caratheodory reduction.

struct CaratheodoryResult {
  std::vector<std::size_t> indices;  // into the input point list
  RVec weights;                      // positive, summing to one
};

/// Shrinks a convex combination equal to zero in R^N to at most N+1 points.
inline CaratheodoryResult caratheodory_reduce(const RMat& points, const RVec& weights,
                                              double tolerance = tol::rank) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (weights.size() != m) throw Error(Errc::invalid_input, "weight count differs from point count");
  if (m == 0) throw Error(Errc::invalid_input, "no points");
  if ((weights.array() < -1e-12).any()) throw Error(Errc::invalid_input, "weights must be nonnegative");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw Error(Errc::invalid_input, "weights must sum to one");
  if ((points * weights).norm() > tolerance) throw Error(Errc::invalid_input, "weighted sum is not zero");

  std::vector<std::size_t> idx;
  std::vector<double> w;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (weights(j) > 0.0) {
      idx.push_back(static_cast<std::size_t>(j));
      w.push_back(weights(j));
    }
  }

  while (static_cast<Eigen::Index>(idx.size()) > n + 1) {
    const auto s = static_cast<Eigen::Index>(idx.size());
    RMat lifted(n + 1, s);
    for (Eigen::Index c = 0; c < s; ++c) {
      lifted.col(c).head(n) = points.col(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
      lifted(n, c) = 1.0;
    }
    Eigen::JacobiSVD<RMat> svd(lifted, Eigen::ComputeFullV);
    RVec mu = svd.matrixV().col(s - 1);
    if (mu.maxCoeff() <= 0.0) mu = -mu;

    double t = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index c = 0; c < s; ++c) {
      if (mu(c) > 0.0) {
        const double r = w[static_cast<std::size_t>(c)] / mu(c);
        if (r < t) {
          t = r;
          arg = c;
        }
      }
    }
    std::vector<std::size_t> nidx;
    std::vector<double> nw;
    for (Eigen::Index c = 0; c < s; ++c) {
      const double val = c == arg ? 0.0 : w[static_cast<std::size_t>(c)] - t * mu(c);
      if (val > 1e-15) {
        nidx.push_back(idx[static_cast<std::size_t>(c)]);
        nw.push_back(val);
      }
    }
    idx = std::move(nidx);
    w = std::move(nw);
  }

  CaratheodoryResult out;
  out.indices = idx;
  out.weights = Eigen::Map<RVec>(w.data(), static_cast<Eigen::Index>(w.size()));
  out.weights /= out.weights.sum();
  return out;
}

// ---------------------------------------------------------------------------
// Scaled dependencies.

/// d-k affine dependencies on the assigned points of a subfamily.
/// components[i](s) is the coefficient a_F^{(i)} of the set family[subfamily[s]].
struct DependencyTuple {
  Field field = Field::real;
  std::vector<std::size_t> subfamily;
  std::vector<CVec> components;

  std::size_t size() const { return subfamily.size(); }

  /// Positions s with some nonzero coefficient.
  std::vector<std::size_t> support(double eps = 0.0) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < subfamily.size(); ++s) {
      for (const auto& c : components) {
        if (std::abs(c(static_cast<Eigen::Index>(s))) > eps) {
          out.push_back(s);
          break;
        }
      }
    }
    return out;
  }

  /// Positions whose coefficients are not round-off next to the largest one.
  std::vector<std::size_t> significant_support(double rel = 1e-10) const {
    double scale = 0.0;
    for (const auto& c : components)
      if (c.size() > 0) scale = std::max(scale, c.cwiseAbs().maxCoeff());
    return support(rel * scale);
  }
};

struct DependencyOutcome {
  FeasibilityOutcome outcome;
  LpProblem problem;
  std::vector<std::size_t> support;  // positions in the tuple's subfamily
  std::vector<double> r;             // per subfamily position, zero off the support
  std::vector<CVec> q;               // per subfamily position

  bool feasible() const { return outcome.feasible(); }
};

namespace detail {

inline LpProblem dependency_lp(const DependencyTuple& t, const Family& family, const std::vector<std::size_t>& sup) {
  const Field f = t.field;
  const int rd = real_dim(f);
  const int d = family.front().dim();
  const auto nrows = static_cast<Eigen::Index>(t.components.size()) * (1 + d) * rd + 1;

  Eigen::Index ncols = 0;
  for (auto s : sup) ncols += static_cast<Eigen::Index>(family[t.subfamily[s]].size());

  LpProblem lp;
  lp.A = RMat::Zero(nrows, ncols);
  lp.b = RVec::Zero(nrows);
  lp.b(nrows - 1) = 1.0;
  // A heavy normalization row keeps the merit equal to the l1 residual of the
  // homogeneous equations over the normalized weights (it saturates at the weight).
  lp.slack_weight = RVec::Ones(nrows);
  lp.slack_weight(nrows - 1) = 1e4;
  lp.nonneg.assign(static_cast<std::size_t>(ncols), true);

  Eigen::Index col = 0;
  for (auto s : sup) {
    const Polytope& p = family[t.subfamily[s]];
    for (std::size_t j = 0; j < p.size(); ++j, ++col) {
      Eigen::Index row = 0;
      for (const auto& comp : t.components) {
        const cplx a = comp(static_cast<Eigen::Index>(s));
        // sum a r = 0
        lp.A(row++, col) = a.real();
        if (rd == 2) lp.A(row++, col) = a.imag();
        // sum a w = 0
        const CVec& v = p.vertex(j);
        for (int c = 0; c < d; ++c) {
          const cplx av = a * v(c);
          lp.A(row++, col) = av.real();
          if (rd == 2) lp.A(row++, col) = av.imag();
        }
      }
      lp.A(row, col) = 1.0;
    }
  }
  return lp;
}

}  // namespace detail

/// Decides whether points q_F in F and r_F >= 0 realize the tuple non-trivially.
/// Normalization sum_{F in support} r_F = 1 encodes "not all trivial".
inline DependencyOutcome scaled_dependency_feasible(const DependencyTuple& t, const Family& family) {
  check_family(family);
  if (t.components.empty()) throw Error(Errc::invalid_input, "tuple has no components");
  for (const auto& c : t.components)
    if (static_cast<std::size_t>(c.size()) != t.subfamily.size())
      throw Error(Errc::dimension_mismatch, "tuple component length differs from subfamily size");
  for (auto i : t.subfamily)
    if (i >= family.size()) throw Error(Errc::invalid_input, "subfamily index out of range");

  DependencyOutcome out;
  out.support = t.significant_support();
  if (out.support.empty()) throw Error(Errc::empty_support, "tuple is entirely zero");
  out.problem = detail::dependency_lp(t, family, out.support);
  out.outcome = lp_feasible(out.problem);

  out.r.assign(t.size(), 0.0);
  out.q.clear();
  for (auto i : t.subfamily) out.q.push_back(family[i].vertex(0));
  if (out.feasible()) {
    Eigen::Index col = 0;
    for (auto s : out.support) {
      const Polytope& p = family[t.subfamily[s]];
      double r = 0.0;
      CVec w = CVec::Zero(p.dim());
      for (std::size_t j = 0; j < p.size(); ++j, ++col) {
        const double lam = out.outcome.point(col);
        r += lam;
        w += lam * p.vertex(j);
      }
      out.r[s] = r;
      if (r > 1e-12) out.q[s] = w / r;
    }
  }
  return out;
}

/// Max residual of the realized equations sum r a = 0, sum r a q = 0 (complex-valued).
inline double dependency_residual(const DependencyTuple& t, const std::vector<double>& r, const std::vector<CVec>& q) {
  double worst = 0.0;
  for (const auto& comp : t.components) {
    cplx s0 = 0.0;
    CVec s1 = CVec::Zero(q.front().size());
    for (std::size_t s = 0; s < t.size(); ++s) {
      const cplx c = r[s] * comp(static_cast<Eigen::Index>(s));
      s0 += c;
      s1 += c * q[s];
    }
    worst = std::max(worst, std::abs(s0));
    if (s1.size() > 0) worst = std::max(worst, s1.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace ktrans
