#pragma once

// Transversal search and exact small-case oracles.
//
// The Stiefel engine works on (d-k)-frames V in F^{d+1}.  For each set F the
// lifted vertices (v, 1) are projected onto span(V); p_{V,F} is the point of
// the projection nearest to the origin and g(V) = sum_F |p_{V,F}|^2.  g
// vanishes exactly when V-perp meets every lifted set, and V-perp cut with
// the slice x_{d+1} = 1 is then a k-transversal.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ktrans/consistency.hpp"
#include "ktrans/convex.hpp"
#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/lp.hpp"
#include "ktrans/min_norm.hpp"
#include "ktrans/planar.hpp"
#include "ktrans/random.hpp"

namespace ktrans {

// ---------------------------------------------------------------------------
// Verification.

struct VerifyResult {
  bool ok = true;
  double residual = 0.0;  // largest set-to-flat distance
  std::vector<StabResult> certificates;
};

inline VerifyResult verify_transversal(const AffineFlat& fl, const Family& family, double tolerance = tol::stab) {
  VerifyResult out;
  for (const auto& p : family) {
    out.certificates.push_back(flat_stabs(fl, p, tolerance));
    out.residual = std::max(out.residual, out.certificates.back().distance);
    out.ok = out.ok && out.certificates.back().stabs;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Objective and gradient on the Stiefel manifold.

struct StiefelState {
  Frame frame;
  double g = 0.0;
  std::vector<CVec> nearest;       // p_{V,F} in frame coordinates
  std::vector<CVec> combination;   // q_F = sum_j alpha_j (vertex_j, 1), with p_{V,F} = V^H q_F
  std::vector<RVec> coefficients;  // alpha
};

inline StiefelState stiefel_objective(const Frame& fr, const Family& family) {
  check_family(family);
  const Field f = fr.field();
  if (fr.dim() != family.front().dim() + 1) throw Error(Errc::dimension_mismatch, "frame must live in F^{d+1}");
  if (family.front().field() != f) throw Error(Errc::field_mismatch, "frame and family differ in field");
  StiefelState st{fr, 0.0, {}, {}, {}};
  const CMat& v = fr.matrix();
  for (const auto& p : family) {
    std::vector<CVec> coords;
    coords.reserve(p.size());
    for (const auto& x : p.vertices()) coords.push_back(v.adjoint() * lift(x));
    const MinNormResult mn = min_norm_point(coords, f);
    CVec q = CVec::Zero(fr.dim());
    for (std::size_t j = 0; j < p.size(); ++j) q += mn.coefficients(static_cast<Eigen::Index>(j)) * lift(p.vertex(j));
    CVec pt = complexify(mn.point, f);
    st.g += pt.squaredNorm();
    st.nearest.push_back(std::move(pt));
    st.combination.push_back(std::move(q));
    st.coefficients.push_back(mn.coefficients);
  }
  return st;
}

/// Euclidean gradient 2 sum_F <v_i, q_F> q_F per column (minimizer supports
/// held fixed), projected onto the tangent space of the Stiefel manifold.
inline CMat stiefel_gradient(const StiefelState& st) {
  const CMat& v = st.frame.matrix();
  CMat g = CMat::Zero(v.rows(), v.cols());
  for (const auto& q : st.combination)
    for (Eigen::Index i = 0; i < v.cols(); ++i) g.col(i) += 2.0 * inner(v.col(i), q) * q;
  const CMat vg = v.adjoint() * g;
  CMat tangent = g - v * ((vg + vg.adjoint()) / 2.0);
  if (st.frame.field() == Field::real) tangent = tangent.real().cast<cplx>();
  return tangent;
}

inline CMat stiefel_gradient(const Frame& fr, const Family& family) {
  return stiefel_gradient(stiefel_objective(fr, family));
}

// ---------------------------------------------------------------------------
// Engines.

struct EngineOptions {
  std::size_t restarts = 16;
  std::size_t max_iters = 3000;
  double tol = 1e-14;                // target for the objective
  double stab_tolerance = tol::stab;  // verification tolerance of a Found flat
  double polish_below = 1e-6;         // objective under which the offset is re-solved exactly
  std::uint64_t seed = 0;
};

struct RestartLog {
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct EngineReport {
  bool found = false;
  std::optional<AffineFlat> flat;
  double residual = std::numeric_limits<double>::infinity();
  double best_objective = std::numeric_limits<double>::infinity();
  std::optional<CMat> best_frame;  // Stiefel engine only
  std::vector<RestartLog> restarts;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_engine_input(const Family& family, int k) {
  check_family(family);
  const int d = family.front().dim();
  if (k < 0 || k >= d) throw Error(Errc::invalid_range, "engine needs 0 <= k < d");
}

inline double slice_gap(const Frame& fr) {
  const CVec e = CVec::Unit(fr.dim(), fr.dim() - 1);
  return 1.0 - (fr.matrix().adjoint() * e).squaredNorm();
}

inline double real_norm2(const CMat& m) { return m.squaredNorm(); }

inline Frame kick(const Frame& fr, Rng& rng, double size) {
  const CMat noise = gaussian_matrix(rng, fr.dim(), fr.size(), fr.field());
  const CMat& v = fr.matrix();
  const CMat vn = v.adjoint() * noise;
  CMat t = noise - v * ((vn + vn.adjoint()) / 2.0);
  if (t.norm() > 0.0) t *= size / t.norm();
  return orthonormalize(CMat(v + t), fr.field());
}

/// Armijo descent from one start; returns the final state and iteration count.
inline std::pair<StiefelState, std::size_t> stiefel_descent(Frame start, const Family& family, const EngineOptions& opt,
                                                            Rng& rng) {
  StiefelState st = stiefel_objective(start, family);
  double eta = 0.1;
  std::size_t it = 0;
  for (; it < opt.max_iters && st.g > opt.tol; ++it) {
    if (slice_gap(st.frame) <= tol::slice) {
      st = stiefel_objective(kick(st.frame, rng, 1e-6), family);
      continue;
    }
    const CMat grad = stiefel_gradient(st);
    const double gn2 = real_norm2(grad);
    if (gn2 < 1e-30) break;
    eta = std::min(eta * 2.0, 1e6);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, eta *= 0.5) {
      std::optional<Frame> next;
      try {
        next = orthonormalize(CMat(st.frame.matrix() - eta * grad), st.frame.field());
      } catch (const Error&) {
        continue;
      }
      StiefelState cand = stiefel_objective(*next, family);
      if (cand.g <= st.g - 1e-4 * eta * gn2) {
        st = std::move(cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {std::move(st), it};
}

/// Keeps the directions of `rough` and re-solves its offset: the flat stabs
/// every set iff the projections of the sets onto the orthogonal complement
/// of its directions share a point.
inline std::optional<AffineFlat> polish_offset(const AffineFlat& rough, const Family& family) {
  const Field f = rough.field();
  const int d = family.front().dim();
  const CMat comp = orthogonal_complement(rough.dirs(), d);
  std::vector<Polytope> shadows;
  for (const auto& p : family) {
    std::vector<CVec> vs;
    for (const auto& v : p.vertices()) vs.push_back(comp.adjoint() * v);
    shadows.emplace_back(f, std::move(vs));
  }
  const IntersectionResult common = polytopes_intersect(shadows);
  if (!common.feasible()) return std::nullopt;
  CVec base = comp * common.point;
  if (f == Field::real) base = base.real().cast<cplx>();
  return AffineFlat(f, base, rough.dirs());
}

inline AffineFlat principal_flat(const std::vector<CVec>& pts, int k, Field f);

/// Turns a near-zero of g into a verified flat: the flat read off the frame,
/// then its exact offset, then a few nearest-point refits of the directions.
inline std::optional<std::pair<AffineFlat, VerifyResult>> polish(const Frame& fr, const Family& family, int k,
                                                                 double tolerance, bool direct) {
  AffineFlat cur = flat_from_orthogonal_frame(fr);
  for (int round = 0; round < 20; ++round) {
    if (round > 0 || direct) {
      VerifyResult vr = verify_transversal(cur, family, tolerance);
      if (vr.ok) return std::make_pair(cur, std::move(vr));
    }
    if (auto fl = polish_offset(cur, family)) {
      VerifyResult vr = verify_transversal(*fl, family, tolerance);
      if (vr.ok) return std::make_pair(*fl, std::move(vr));
    }
    std::vector<CVec> q;
    for (const auto& p : family) q.push_back(flat_stabs(cur, p, tolerance).point);
    cur = principal_flat(q, k, fr.field());
  }
  return std::nullopt;
}

}  // namespace detail

/// Multi-start descent of g over (d-k)-frames.  Found flats are re-verified;
/// NotFound says nothing about existence.  A recovered flat is within
/// sqrt(g) / (1 - |V^H e_{d+1}|^2) of every set.
inline EngineReport find_transversal_stiefel(const Family& family, int k, const EngineOptions& opt = {}) {
  detail::check_engine_input(family, k);
  const int d = family.front().dim();
  const Field f = family.front().field();
  EngineReport rep;
  rep.seed = opt.seed;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    const std::uint64_t s = derive_seed(opt.seed, r);
    Rng rng(s);
    auto [st, iters] = detail::stiefel_descent(random_frame(rng, d + 1, d - k, f), family, opt, rng);
    rep.iterations += iters;
    rep.restarts.push_back({s, st.g, iters});
    if (st.g < rep.best_objective) {
      rep.best_objective = st.g;
      rep.best_frame = st.frame.matrix();
    }
    if (st.g > opt.polish_below) continue;
    for (int attempt = 0; attempt < 4; ++attempt) {
      try {
        auto hit = detail::polish(st.frame, family, k, opt.stab_tolerance, st.g <= opt.tol);
        if (hit) {
          rep.found = true;
          rep.flat = std::move(hit->first);
          rep.residual = hit->second.residual;
          return rep;
        }
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::slice_degenerate) throw;
        st = stiefel_objective(detail::kick(st.frame, rng, 1e-6), family);
      }
    }
  }
  return rep;
}

namespace detail {

/// Mean plus top-k principal F-directions of the points (columns).
inline AffineFlat principal_flat(const std::vector<CVec>& pts, int k, Field f) {
  const auto d = pts.front().size();
  CVec mean = CVec::Zero(d);
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  if (f == Field::real) mean = mean.real().cast<cplx>();
  if (k == 0) return AffineFlat::point(f, mean);
  CMat c(d, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) c.col(static_cast<Eigen::Index>(i)) = pts[i] - mean;
  CMat dirs;
  if (f == Field::real) {
    Eigen::JacobiSVD<RMat> svd(c.real(), Eigen::ComputeThinU);
    dirs = svd.matrixU().cast<cplx>();
  } else {
    Eigen::JacobiSVD<CMat> svd(c, Eigen::ComputeThinU);
    dirs = svd.matrixU();
  }
  // Keep the leading directions that carry spread; pad with fixed complement axes.
  const Eigen::Index keep = std::min<Eigen::Index>(k, dirs.cols());
  CMat basis = dirs.leftCols(keep);
  if (keep < k) {
    const CMat extra = orthogonal_complement(basis, static_cast<int>(d));
    basis.conservativeResize(d, k);
    basis.rightCols(k - keep) = extra.leftCols(k - keep);
  }
  return AffineFlat(f, mean, orthonormalize(basis, f).matrix());
}

}  // namespace detail

/// Baseline: alternate nearest points q_F in F with a principal-subspace refit.
/// The objective sum_F dist(F, flat)^2 never increases.
inline EngineReport alternating_flat_fit(const Family& family, int k, const EngineOptions& opt = {},
                                         std::vector<std::vector<double>>* traces = nullptr) {
  detail::check_engine_input(family, k);
  const int d = family.front().dim();
  const Field f = family.front().field();
  EngineReport rep;
  rep.seed = opt.seed;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    const std::uint64_t s = derive_seed(opt.seed, r);
    Rng rng(s);
    CMat dirs = k > 0 ? random_frame(rng, d, k, f).matrix() : CMat(d, 0);
    const Polytope& anchor = family[static_cast<std::size_t>(rng() % family.size())];
    AffineFlat fl(f, anchor.vertex(0) + gaussian_vector(rng, d, f), dirs);

    std::vector<double> trace;
    std::size_t it = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (; it < opt.max_iters; ++it) {
      std::vector<CVec> q;
      double obj = 0.0;
      for (const auto& p : family) {
        const StabResult st = flat_stabs(fl, p, opt.stab_tolerance);
        obj += st.distance * st.distance;
        q.push_back(st.point);
      }
      trace.push_back(obj);
      if (obj > prev + 1e-12 * std::max(1.0, prev))
        throw Error(Errc::invariant_violation, "alternating fit objective increased");
      if (obj <= opt.tol || (std::isfinite(prev) && prev - obj <= 1e-15 * std::max(1.0, prev))) {
        prev = obj;
        break;
      }
      prev = obj;
      fl = detail::principal_flat(q, k, f);
    }
    rep.iterations += it;
    rep.restarts.push_back({s, prev, it});
    rep.best_objective = std::min(rep.best_objective, prev);
    if (traces) traces->push_back(trace);
    const VerifyResult vr = verify_transversal(fl, family, opt.stab_tolerance);
    if (vr.ok) {
      rep.found = true;
      rep.flat = fl;
      rep.residual = vr.residual;
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Test map and Caratheodory extraction.

/// Blocks tau_i = (sum_F <v_i, p_F>, sum_F <v_i, p_F> phi(F)) in F^{k+1}, i = 1..d-k.
inline std::vector<CVec> test_map(const StiefelState& st, const PointAssignment& a) {
  const CMat& v = st.frame.matrix();
  std::vector<CVec> blocks(static_cast<std::size_t>(v.cols()), CVec::Zero(a.k + 1));
  for (std::size_t s = 0; s < st.nearest.size(); ++s) {
    const CVec p = v * st.nearest[s];
    CVec y(a.k + 1);
    y(0) = 1.0;
    if (a.k > 0) y.tail(a.k) = a.image(s);
    for (Eigen::Index i = 0; i < v.cols(); ++i) blocks[static_cast<std::size_t>(i)] += inner(v.col(i), p) * y;
  }
  return blocks;
}

inline std::vector<CVec> test_map(const Frame& fr, const Family& family, const PointAssignment& a) {
  check_assignment(a, family.size());
  return test_map(stiefel_objective(fr, family), a);
}

inline double test_map_norm(const std::vector<CVec>& blocks) {
  double s = 0.0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

struct TestMapZero {
  Frame frame;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Looks for a frame where the test map vanishes.  With the nearest-point
/// combinations q_F held fixed the map is v_i -> M v_i with
/// M = sum_F (1, phi(F)) q_F^H, so each step moves V into the kernel of M
/// (dimension >= d-k).  For singleton families one step is exact.
inline TestMapZero find_test_map_zero(const Family& family, const PointAssignment& a, std::uint64_t seed,
                                      std::size_t max_iters = 200) {
  check_family(family);
  check_assignment(a, family.size());
  const int d = family.front().dim();
  const int n = d - a.k;
  if (n <= 0) throw Error(Errc::invalid_range, "assignment k must be below d");
  const Field f = family.front().field();
  Rng rng(seed);
  Frame fr = random_frame(rng, d + 1, n, f);
  TestMapZero out{fr, 0.0, 0};
  for (std::size_t it = 0; it <= max_iters; ++it) {
    const StiefelState st = stiefel_objective(fr, family);
    out = {fr, test_map_norm(test_map(st, a)), it};
    if (out.residual < 1e-13 || it == max_iters) break;
    CMat m = CMat::Zero(a.k + 1, d + 1);
    for (std::size_t s = 0; s < family.size(); ++s) {
      CVec y(a.k + 1);
      y(0) = 1.0;
      if (a.k > 0) y.tail(a.k) = a.image(s);
      m += y * st.combination[s].adjoint();
    }
    CMat kernel;
    if (f == Field::real) {
      Eigen::JacobiSVD<RMat> svd(m.real(), Eigen::ComputeFullV);
      kernel = svd.matrixV().rightCols(d + 1 - std::min<Eigen::Index>(svd.nonzeroSingularValues(), a.k + 1)).cast<cplx>();
    } else {
      Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
      kernel = svd.matrixV().rightCols(d + 1 - std::min<Eigen::Index>(svd.nonzeroSingularValues(), a.k + 1));
    }
    // The kernel vectors closest to the current span.
    const CMat proj = kernel * (kernel.adjoint() * fr.matrix());
    try {
      fr = orthonormalize(proj, f);
    } catch (const Error&) {
      fr = orthonormalize(CMat(kernel.leftCols(n)), f);
    }
  }
  return out;
}

struct CaratheodoryExtraction {
  std::vector<std::size_t> subfamily;  // family indices, ascending
  RVec weights;                        // positive, summing to one
  DependencyTuple tuple;               // a_F^(i) = weight_F <v_i, p_F>
};

/// At a test-map zero, reduces the zero combination of the points
/// (<v_i, p_F>, <v_i, p_F> phi(F))_i over the sets with p_F != 0 to at most
/// (k+1)(d-k) dim_R F + 1 of them.
inline CaratheodoryExtraction extract_caratheodory_subfamily(const Frame& fr, const Family& family,
                                                             const PointAssignment& a) {
  check_assignment(a, family.size());
  const StiefelState st = stiefel_objective(fr, family);
  const auto blocks = test_map(st, a);
  if (test_map_norm(blocks) >= 1e-6) throw Error(Errc::invalid_input, "frame is not at a test-map zero");
  const Field f = fr.field();
  const CMat& v = fr.matrix();
  const Eigen::Index n = v.cols();

  std::vector<std::size_t> g;
  for (std::size_t s = 0; s < family.size(); ++s)
    if (st.nearest[s].norm() > 1e-9) g.push_back(s);
  if (g.empty()) throw Error(Errc::all_projections_contain_origin, "every projected set contains the origin");

  auto values = [&](std::size_t s) {
    const CVec p = v * st.nearest[s];
    CVec c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = inner(v.col(i), p);
    return c;
  };
  const Eigen::Index rows = n * (a.k + 1) * real_dim(f);
  RMat pts(rows, static_cast<Eigen::Index>(g.size()));
  for (std::size_t c = 0; c < g.size(); ++c) {
    const CVec val = values(g[c]);
    CVec z(n * (a.k + 1));
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i * (a.k + 1)) = val(i);
      if (a.k > 0) z.segment(i * (a.k + 1) + 1, a.k) = val(i) * a.image(g[c]);
    }
    pts.col(static_cast<Eigen::Index>(c)) = realify(z, f);
  }
  const RVec w = RVec::Constant(static_cast<Eigen::Index>(g.size()), 1.0 / static_cast<double>(g.size()));
  const CaratheodoryResult red = caratheodory_reduce(pts, w, 1e-6);

  std::vector<std::pair<std::size_t, double>> picked;
  for (std::size_t j = 0; j < red.indices.size(); ++j) picked.push_back({g[red.indices[j]], red.weights(static_cast<Eigen::Index>(j))});
  std::sort(picked.begin(), picked.end());

  CaratheodoryExtraction out;
  out.weights.resize(static_cast<Eigen::Index>(picked.size()));
  out.tuple.field = f;
  out.tuple.components.assign(static_cast<std::size_t>(n), CVec::Zero(static_cast<Eigen::Index>(picked.size())));
  for (std::size_t j = 0; j < picked.size(); ++j) {
    out.subfamily.push_back(picked[j].first);
    out.weights(static_cast<Eigen::Index>(j)) = picked[j].second;
    const CVec val = values(picked[j].first);
    for (Eigen::Index i = 0; i < n; ++i)
      out.tuple.components[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(j)) = picked[j].second * val(i);
  }
  out.tuple.subfamily = out.subfamily;
  return out;
}

// ---------------------------------------------------------------------------
// Exact oracles.

/// A line meeting every polygon in R^2 (exact critical-direction sweep), if one exists.
inline std::optional<AffineFlat> hyperplane_transversal_2d_exact(const Family& family) {
  check_family(family);
  const auto polys = planar::to_rational(family);
  std::vector<const planar::QPolygon*> ptrs;
  for (const auto& p : polys) ptrs.push_back(&p);
  const auto line = planar::find_line_transversal(ptrs);
  if (!line) return std::nullopt;
  const double ux = line->u.x.convert_to<double>(), uy = line->u.y.convert_to<double>();
  const Rational nn = planar::dot(line->n, line->n);
  const Rational bx = line->s * line->n.x / nn, by = line->s * line->n.y / nn;
  CVec base(2), dir(2);
  base << bx.convert_to<double>(), by.convert_to<double>();
  const double len = std::hypot(ux, uy);
  dir << ux / len, uy / len;
  return AffineFlat(Field::real, base, CMat(dir));
}

namespace detail {

struct QComplex {
  Rational re, im;
  bool zero() const { return re == 0 && im == 0; }
};

inline QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator*(const QComplex& a, const QComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator/(const QComplex& a, const QComplex& b) {
  const Rational den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

/// Exact F-rank by Gaussian elimination over Q or Q(i).
inline int exact_rank(std::vector<std::vector<QComplex>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].zero()) continue;
      const QComplex factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact affine F-rank of the points (doubles are converted exactly).
inline int exact_affine_rank(const std::vector<CVec>& points) {
  if (points.size() <= 1) return 0;
  const auto d = static_cast<std::size_t>(points.front().size());
  std::vector<std::vector<detail::QComplex>> m(points.size() - 1, std::vector<detail::QComplex>(d));
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (static_cast<std::size_t>(points[i].size()) != d) throw Error(Errc::dimension_mismatch, "points differ in dimension");
    for (std::size_t c = 0; c < d; ++c) {
      const auto e = static_cast<Eigen::Index>(c);
      m[i - 1][c] = {Rational(points[i](e).real()) - Rational(points[0](e).real()),
                     Rational(points[i](e).imag()) - Rational(points[0](e).imag())};
    }
  }
  return detail::exact_rank(std::move(m));
}

/// A k-flat meets every singleton iff the affine hull has dimension <= k.
inline bool point_family_transversal_exact(const std::vector<CVec>& points, int k) {
  return exact_affine_rank(points) <= k;
}

}  // namespace ktrans
