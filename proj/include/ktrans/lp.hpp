#pragma once

// Certified linear feasibility: primal simplex with Bland's rule on the l1
// phase-one problem
//
//     minimize  sum(e+) + sum(e-)   s.t.  A x + e+ - e- = b,  x_J >= 0,  e+- >= 0
//
// The optimal value is an infeasibility merit (zero iff A x = b is
// solvable), and the optimal dual y satisfies y^T A <= 0 on nonnegative
// columns, y^T A = 0 on free columns, |y_r| <= w_r and y^T b = merit, where
// w_r is the row's slack weight (default 1).  When the
// merit is positive, y is therefore a Farkas certificate.  Floating-point
// results are validated; failures are re-solved in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "ktrans/core.hpp"
#include "ktrans/error.hpp"

namespace ktrans {

using Rational = boost::multiprecision::cpp_rational;

/// Equality system A x = b with a per-variable nonnegativity mask (false = free).
struct LpProblem {
  RMat A;
  RVec b;
  std::vector<bool> nonneg;
  RVec slack_weight;  // optional per-row l1 weight of the phase-one slacks (default 1)

  double weight(Eigen::Index r) const { return slack_weight.size() == 0 ? 1.0 : slack_weight(r); }

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }
};

struct FeasibilityOutcome {
  enum class Verdict { feasible, infeasible };

  Verdict verdict = Verdict::feasible;
  RVec point;   // feasible: a solution of the system
  RVec farkas;  // infeasible: certificate y
  double merit = 0.0;
  bool exact = false;  // result came from the rational re-solve

  bool feasible() const { return verdict == Verdict::feasible; }
};

namespace detail {

template <class T>
T to_scalar(double v) {
  return T(v);
}

/// Dense simplex tableau over the l1 phase-one layout; Bland's rule throughout.
/// Columns: split original variables (a free variable gets a negated twin),
/// then the e+ slacks, then the e- slacks.
template <class T>
class Tableau {
 public:
  Tableau(const LpProblem& prob, T eps, T pivot_eps)
      : m_(static_cast<std::size_t>(prob.rows())), n_(static_cast<std::size_t>(prob.cols())), eps_(eps),
        pivot_eps_(pivot_eps) {
    for (std::size_t j = 0; j < n_; ++j) {
      orig_of_.push_back(j);
      sign_of_.push_back(1);
      if (!prob.nonneg[j]) {
        orig_of_.push_back(j);
        sign_of_.push_back(-1);
      }
    }
    nx_ = orig_of_.size();
    ncol_ = nx_ + 2 * m_;
    width_ = ncol_ + 1;
    tab_.assign(m_ * width_, T(0));
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const double bi = prob.b(static_cast<Eigen::Index>(r));
      const int s = bi >= 0.0 ? 1 : -1;
      for (std::size_t c = 0; c < nx_; ++c) {
        const double a = prob.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(orig_of_[c]));
        if (a != 0.0) at(r, c) = to_scalar<T>(a) * T(s * sign_of_[c]);
      }
      at(r, nx_ + r) = T(s);
      at(r, nx_ + m_ + r) = T(-s);
      at(r, ncol_) = to_scalar<T>(bi) * T(s);
      basis_[r] = s > 0 ? nx_ + r : nx_ + m_ + r;
    }
    max_pivots_ = 50 * (m_ + ncol_) + 1000;
    initial_ = tab_;
    row_cost_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) row_cost_[r] = to_scalar<T>(prob.weight(static_cast<Eigen::Index>(r)));
  }

  /// Minimizes the weighted l1 slack; returns the optimal value.
  T phase_one() {
    cost_.assign(ncol_, T(0));
    for (std::size_t c = nx_; c < ncol_; ++c) cost_[c] = row_cost_[(c - nx_) % m_];
    run(ncol_);
    T merit(0);
    for (std::size_t r = 0; r < m_; ++r) merit += cost_[basis_[r]] * at(r, ncol_);
    return merit;
  }

  /// Phase-one duals y_r = w_r - reduced cost of e+_r.
  std::vector<T> phase_one_duals() const {
    std::vector<T> y(m_);
    for (std::size_t r = 0; r < m_; ++r) y[r] = row_cost_[r] - rc_[nx_ + r];
    return y;
  }

  /// After a zero-merit phase one: minimizes c^T x over the feasible set with
  /// slacks frozen at zero.  Returns false when unbounded.
  bool phase_two(const std::vector<double>& c_orig) {
    // Degenerate pivots move zero-level slacks out of the basis where possible.
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < nx_) continue;
      for (std::size_t c = 0; c < nx_; ++c) {
        if (abs_gt(at(r, c), eps_)) {
          pivot(r, c);
          break;
        }
      }
    }
    cost_.assign(ncol_, T(0));
    for (std::size_t c = 0; c < nx_; ++c) cost_[c] = to_scalar<T>(c_orig[orig_of_[c]]) * T(sign_of_[c]);
    return run(nx_);
  }

  T objective() const {
    T v(0);
    for (std::size_t r = 0; r < m_; ++r) v += cost_[basis_[r]] * at(r, ncol_);
    return v;
  }

  std::vector<T> primal() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t c = basis_[r];
      if (c < nx_) x[orig_of_[c]] += T(sign_of_[c]) * at(r, ncol_);
    }
    return x;
  }

 private:
  static bool abs_gt(const T& v, const T& eps) { return v > eps || v < -eps; }

  T& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
  const T& at(std::size_t r, std::size_t c) const { return tab_[r * width_ + c]; }

  void recompute_rc() {
    rc_.assign(width_, T(0));
    for (std::size_t c = 0; c < width_; ++c) {
      T acc = c < ncol_ ? cost_[c] : T(0);
      for (std::size_t r = 0; r < m_; ++r) {
        const T& v = at(r, c);
        if (v != T(0)) acc -= cost_[basis_[r]] * v;
      }
      rc_[c] = acc;
    }
  }

  void pivot(std::size_t leave, std::size_t enter) {
    const T piv = at(leave, enter);
    for (std::size_t c = 0; c < width_; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave) continue;
      const T f = at(r, enter);
      if (f == T(0)) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        const T& lv = at(leave, c);
        if (lv != T(0)) at(r, c) -= f * lv;
      }
      at(r, enter) = T(0);
    }
    if (!rc_.empty()) {
      const T f = rc_[enter];
      if (f != T(0)) {
        for (std::size_t c = 0; c < width_; ++c) {
          const T& lv = at(leave, c);
          if (lv != T(0)) rc_[c] -= f * lv;
        }
      }
      rc_[enter] = T(0);
    }
    basis_[leave] = enter;
    if (++pivots_ > max_pivots_) throw Error(Errc::numerical_failure, "simplex pivot limit exceeded");
    if constexpr (std::is_same_v<T, double>) {
      if (pivots_ % 50 == 0) refactor();
    }
  }

  // Floating point only: rebuilds the tableau as B^{-1} times the initial one,
  // discarding the rounding accumulated by successive pivots.
  void refactor() {
    if constexpr (std::is_same_v<T, double>) {
      RMat b(m_, m_);
      for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t i = 0; i < m_; ++i) b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = initial_[r * width_ + basis_[i]];
      const Eigen::PartialPivLU<RMat> lu(b);
      const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> init(
          initial_.data(), static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(width_));
      const RMat t = lu.solve(RMat(init));
      if (!t.allFinite()) return;
      for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t c = 0; c < width_; ++c) {
          const double v = t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          at(r, c) = std::abs(v) < 1e-14 ? 0.0 : v;
        }
      for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t r = 0; r < m_; ++r) at(r, basis_[i]) = r == i ? 1.0 : 0.0;
      }
      if (!rc_.empty()) recompute_rc();
    }
  }

  // Bland's rule over entering columns [0, allowed); false when unbounded.
  bool run(std::size_t allowed) {
    recompute_rc();
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (rc_[c] < -eps_) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) {
        if constexpr (std::is_same_v<T, double>) {
          if (pivots_ != last_refactor_) {
            last_refactor_ = pivots_;
            refactor();
            continue;
          }
        }
        return true;
      }

      std::size_t leave = m_;
      T best_ratio(0);
      for (std::size_t r = 0; r < m_; ++r) {
        const T& a = at(r, enter);
        if (!(a > pivot_eps_)) continue;
        T ratio = at(r, ncol_) / a;
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if constexpr (std::is_same_v<T, double>) {
        // among near-minimal ratios prefer the largest pivot element
        if (leave != m_) {
          const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
          for (std::size_t r = 0; r < m_; ++r) {
            const double a = at(r, enter);
            if (a > pivot_eps_ && at(r, ncol_) / a <= best_ratio + slack && a > at(leave, enter)) leave = r;
          }
        }
      }
      if (leave == m_) {
        // Phase one is bounded below, so this is noise on the entering column.
        if (allowed == ncol_) {
          rc_[enter] = T(0);
          continue;
        }
        return false;
      }
      pivot(leave, enter);
    }
  }

  std::size_t m_, n_, nx_ = 0, ncol_ = 0, width_ = 0;
  T eps_;
  T pivot_eps_;
  std::size_t max_pivots_ = 0;
  std::size_t pivots_ = 0;
  std::size_t last_refactor_ = static_cast<std::size_t>(-1);
  std::vector<T> initial_;
  std::vector<std::size_t> orig_of_;
  std::vector<int> sign_of_;
  std::vector<T> tab_;
  std::vector<std::size_t> basis_;
  std::vector<T> row_cost_;
  std::vector<T> cost_;
  std::vector<T> rc_;
};

template <class T>
struct SimplexResult {
  std::vector<T> x;
  std::vector<T> y;
  T merit;
};

template <class T>
SimplexResult<T> simplex_l1(const LpProblem& prob, T eps, T pivot_eps) {
  Tableau<T> tab(prob, eps, pivot_eps);
  SimplexResult<T> out;
  out.merit = tab.phase_one();
  out.x = tab.primal();
  out.y = tab.phase_one_duals();
  return out;
}

}  // namespace detail

/// max_j violation of the Farkas conditions; returns false when y does not certify infeasibility.
inline bool validate_farkas(const LpProblem& prob, const RVec& y) {
  if (y.size() != prob.rows()) return false;
  const RVec ya = prob.A.transpose() * y;
  for (Eigen::Index j = 0; j < prob.cols(); ++j) {
    if (prob.nonneg[static_cast<std::size_t>(j)]) {
      if (ya(j) > tol::certificate) return false;
    } else if (std::abs(ya(j)) > tol::certificate) {
      return false;
    }
  }
  return y.dot(prob.b) > tol::feasibility;
}

inline bool validate_point(const LpProblem& prob, const RVec& x) {
  if (x.size() != prob.cols()) return false;
  for (Eigen::Index j = 0; j < prob.cols(); ++j)
    if (prob.nonneg[static_cast<std::size_t>(j)] && x(j) < 0.0) return false;
  if (prob.rows() == 0) return true;
  return (prob.A * x - prob.b).cwiseAbs().maxCoeff() <= tol::feasibility;
}

inline void check_problem(const LpProblem& prob) {
  if (prob.b.size() != prob.rows() || prob.nonneg.size() != static_cast<std::size_t>(prob.cols()))
    throw Error(Errc::dimension_mismatch, "LP dimensions are inconsistent");
  if (prob.slack_weight.size() != 0 &&
      (prob.slack_weight.size() != prob.rows() || (prob.slack_weight.array() <= 0.0).any()))
    throw Error(Errc::invalid_input, "slack weights must be positive, one per row");
  if (!prob.A.allFinite() || !prob.b.allFinite()) throw Error(Errc::invalid_input, "LP has non-finite entries");
}

namespace detail {

inline FeasibilityOutcome outcome_from(const LpProblem& prob, const std::vector<double>& x,
                                       const std::vector<double>& y, double merit, bool exact) {
  FeasibilityOutcome out;
  out.merit = merit;
  out.exact = exact;
  if (merit <= tol::feasibility) {
    out.verdict = FeasibilityOutcome::Verdict::feasible;
    out.point = Eigen::Map<const RVec>(x.data(), static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index j = 0; j < out.point.size(); ++j)
      if (prob.nonneg[static_cast<std::size_t>(j)] && out.point(j) < 0.0) out.point(j) = 0.0;
  } else {
    out.verdict = FeasibilityOutcome::Verdict::infeasible;
    out.farkas = Eigen::Map<const RVec>(y.data(), static_cast<Eigen::Index>(y.size()));
  }
  return out;
}

inline bool outcome_valid(const LpProblem& prob, const FeasibilityOutcome& o) {
  return o.feasible() ? validate_point(prob, o.point) : validate_farkas(prob, o.farkas);
}

}  // namespace detail

inline FeasibilityOutcome lp_feasible_exact(const LpProblem& prob) {
  check_problem(prob);
  auto res = detail::simplex_l1<Rational>(prob, Rational(0), Rational(0));
  std::vector<double> x, y;
  for (const auto& v : res.x) x.push_back(v.convert_to<double>());
  for (const auto& v : res.y) y.push_back(v.convert_to<double>());
  return detail::outcome_from(prob, x, y, res.merit.convert_to<double>(), true);
}

/// Feasibility of A x = b, x_J >= 0 with a validated certificate either way.
inline FeasibilityOutcome lp_feasible(const LpProblem& prob) {
  check_problem(prob);
  if (prob.rows() == 0) {
    FeasibilityOutcome out;
    out.point = RVec::Zero(prob.cols());
    return out;
  }
  try {
    auto res = detail::simplex_l1<double>(prob, 1e-11, 1e-9);
    auto out = detail::outcome_from(prob, res.x, res.y, res.merit, false);
    if (detail::outcome_valid(prob, out)) return out;
  } catch (const Error& e) {
    if (e.code() != Errc::numerical_failure) throw;
  }

  auto out = lp_feasible_exact(prob);
  if (!detail::outcome_valid(prob, out))
    throw Error(Errc::numerical_failure, "certificate failed validation after exact re-solve");
  return out;
}

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };

  Status status = Status::infeasible;
  RVec x;
  double objective = 0.0;
};

namespace detail {

template <class T>
LpSolution minimize_with(const LpProblem& prob, const RVec& c, T eps, T pivot_eps) {
  Tableau<T> tab(prob, eps, pivot_eps);
  LpSolution out;
  if (tab.phase_one() > to_scalar<T>(tol::feasibility)) return out;
  std::vector<double> cost(c.data(), c.data() + c.size());
  if (!tab.phase_two(cost)) {
    out.status = LpSolution::Status::unbounded;
    return out;
  }
  const auto x = tab.primal();
  out.status = LpSolution::Status::optimal;
  out.x.resize(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out.x(static_cast<Eigen::Index>(i)) = static_cast<double>(x[i]);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace detail

/// Minimizes c^T x over A x = b, x_J >= 0 (floating point; feasibility at
/// tol::feasibility).  A stalled float run is repeated in rational arithmetic.
inline LpSolution lp_minimize(const LpProblem& prob, const RVec& c) {
  check_problem(prob);
  if (c.size() != prob.cols()) throw Error(Errc::dimension_mismatch, "cost vector length differs from column count");
  try {
    return detail::minimize_with<double>(prob, c, 1e-11, 1e-9);
  } catch (const Error& e) {
    if (e.code() != Errc::numerical_failure) throw;
  }
  return detail::minimize_with<Rational>(prob, c, Rational(0), Rational(0));
}

}  // namespace ktrans
