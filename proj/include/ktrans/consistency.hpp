#pragma once

// Checkers for the dependency-consistency conditions characterizing
// k-transversals, the separation-consistency condition for hyperplanes,
// the witness construction from a known transversal, and Hadwiger's
// ordering condition for pairwise disjoint planar sets.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "ktrans/convex.hpp"
#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/lp.hpp"
#include "ktrans/planar.hpp"
#include "ktrans/random.hpp"

namespace ktrans {

/// Points P in F^k and a map phi from family indices into P.
struct PointAssignment {
  Field field = Field::real;
  int k = 0;
  std::vector<CVec> points;
  std::vector<std::size_t> phi;

  const CVec& image(std::size_t set) const { return points[phi[set]]; }
};

inline void check_assignment(const PointAssignment& a, std::size_t family_size) {
  if (a.k < 0) throw Error(Errc::invalid_input, "assignment k is negative");
  if (a.phi.size() != family_size) throw Error(Errc::dimension_mismatch, "assignment phi does not cover the family");
  for (const auto& p : a.points) {
    if (p.size() != a.k) throw Error(Errc::dimension_mismatch, "assignment point has wrong dimension");
    check_field_vector(p, a.field, "assignment point");
  }
  for (auto t : a.phi)
    if (t >= a.points.size()) throw Error(Errc::invalid_input, "assignment phi target out of range");
}

/// (k+1)(d-k) dim_R F + 1.
inline int subfamily_bound(int k, int d, Field f) {
  if (k < 0 || k >= d) throw Error(Errc::invalid_range, "subfamily_bound needs 0 <= k < d");
  return (k + 1) * (d - k) * real_dim(f) + 1;
}

// ---------------------------------------------------------------------------
// Dependency spaces and single tuples.

/// Affine dependencies of the assigned points of a subfamily, as an
/// F-orthonormal basis (columns indexed by subfamily position).  The real
/// basis of the same space is {b_j} for R and {b_j, i b_j} for C.
struct DependencySpace {
  Field field = Field::real;
  std::vector<std::size_t> subfamily;
  CMat basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  int real_dimension() const { return dim() * real_dim(field); }
};

namespace detail {

/// Rows (1, phi(F)) stacked as a (k+1) x m matrix.
inline CMat dependency_matrix(const PointAssignment& a, const std::vector<std::size_t>& sub) {
  CMat m(a.k + 1, static_cast<Eigen::Index>(sub.size()));
  for (std::size_t s = 0; s < sub.size(); ++s) {
    m(0, static_cast<Eigen::Index>(s)) = 1.0;
    if (a.k > 0) m.block(1, static_cast<Eigen::Index>(s), a.k, 1) = a.image(sub[s]);
  }
  return m;
}

}  // namespace detail

inline DependencySpace dependency_space(const PointAssignment& a, const std::vector<std::size_t>& subfamily) {
  if (subfamily.empty()) throw Error(Errc::invalid_input, "subfamily is empty");
  for (auto i : subfamily)
    if (i >= a.phi.size()) throw Error(Errc::invalid_input, "subfamily index out of range");
  const CMat m = detail::dependency_matrix(a, subfamily);
  const auto cols = m.cols();

  DependencySpace out;
  out.field = a.field;
  out.subfamily = subfamily;
  if (a.field == Field::real) {
    const RMat mr = m.real();
    Eigen::JacobiSVD<RMat> svd(mr, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    const double cut = tol::rank * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++rank;
    out.basis = svd.matrixV().rightCols(cols - rank).cast<cplx>();
  } else {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    const double cut = tol::rank * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++rank;
    out.basis = svd.matrixV().rightCols(cols - rank);
  }
  return out;
}

/// Largest |sum a| or |sum a phi| over the tuple's components.
inline double dependency_membership_residual(const DependencyTuple& t, const PointAssignment& a) {
  const CMat m = detail::dependency_matrix(a, t.subfamily);
  double worst = 0.0;
  for (const auto& c : t.components) worst = std::max(worst, (m * c).cwiseAbs().maxCoeff());
  return worst;
}

/// Membership in D at 1e-9, relative to the size of the coefficients and of the points.
inline bool in_dependency_space(const DependencyTuple& t, const PointAssignment& a) {
  double scale = 1.0;
  for (const auto& c : t.components)
    if (c.size() > 0) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  double reach = 1.0;
  for (auto i : t.subfamily)
    if (a.k > 0) reach = std::max(reach, a.image(i).cwiseAbs().maxCoeff());
  return dependency_membership_residual(t, a) <= 1e-9 * scale * reach;
}

struct TupleCheck {
  bool satisfied = false;
  DependencyOutcome outcome;  // r, q when satisfied; Farkas certificate otherwise
};

/// Tests one nontrivial tuple of affine dependencies on the assigned points.
inline TupleCheck check_tuple(const DependencyTuple& t, const Family& family, const PointAssignment& a) {
  check_family(family);
  check_assignment(a, family.size());
  if (t.field != a.field || family.front().field() != a.field)
    throw Error(Errc::field_mismatch, "tuple, family and assignment must share a field");
  for (auto i : t.subfamily)
    if (i >= family.size()) throw Error(Errc::invalid_input, "subfamily index out of range");
  for (const auto& c : t.components)
    if (static_cast<std::size_t>(c.size()) != t.size())
      throw Error(Errc::dimension_mismatch, "tuple component length differs from subfamily size");
  if (!in_dependency_space(t, a))
    throw Error(Errc::not_a_dependency, "tuple is not an affine dependency of the assigned points");
  TupleCheck out;
  out.outcome = scaled_dependency_feasible(t, family);
  out.satisfied = out.outcome.feasible();
  return out;
}

// ---------------------------------------------------------------------------
// The full condition, by sampling plus local search.

struct ConsistencyBudget {
  std::size_t samples = 4096;     // sphere samples per subfamily
  std::size_t restarts = 32;      // local-search restarts per subfamily
  std::size_t local_steps = 24;   // merit evaluations per restart
  std::uint64_t seed = 0;
  bool prune = true;              // only subfamilies of size min(n, bound)
};

struct ConsistencyVerdict {
  enum class Kind { consistent_up_to_resolution, inconsistent };

  Kind kind = Kind::consistent_up_to_resolution;
  std::size_t samples_used = 0;        // tuples evaluated in total
  std::size_t subfamilies_checked = 0;
  double max_merit = -std::numeric_limits<double>::infinity();

  // inconsistent only
  DependencyTuple tuple;  // the violating tuple (its subfamily is the witness subfamily)
  LpProblem problem;      // the scaled-dependency system it induces
  RVec farkas;

  bool consistent() const { return kind == Kind::consistent_up_to_resolution; }
};

/// Lexicographic index subsets of {0..n-1} of the given size.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size > n) return out;
  std::vector<std::size_t> cur(size);
  for (std::size_t i = 0; i < size; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = size;
    while (i > 0 && cur[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Subfamilies the checker visits: all sizes 2..bound, or only size min(n, bound).
inline std::vector<std::vector<std::size_t>> consistency_subfamilies(std::size_t n, int bound, bool prune) {
  const std::size_t top = std::min(n, static_cast<std::size_t>(bound));
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = prune ? top : 2; s <= top; ++s) {
    auto c = combinations(n, s);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

namespace detail {

/// Largest t with a realization whose weights satisfy lambda_j >= t / (number of weights).
/// Positive t means strictly realizable; t <= 0 defers to the certified LP.
inline std::optional<double> dependency_margin(const DependencyTuple& t, const Family& family) {
  const auto sup = t.significant_support();
  LpProblem lp = dependency_lp(t, family, sup);
  const Eigen::Index m = lp.cols();
  lp.A.conservativeResize(Eigen::NoChange, m + 1);
  lp.A.col(m) = lp.A.leftCols(m).rowwise().sum() / static_cast<double>(m);
  lp.nonneg.push_back(false);
  RVec c = RVec::Zero(m + 1);
  c(m) = -1.0;
  const auto sol = lp_minimize(lp, c);
  if (sol.status != LpSolution::Status::optimal) return std::nullopt;
  return sol.x(m);
}

struct TupleSampler {
  const DependencySpace& space;
  int blocks;  // d - k

  // coordinates: dim x blocks, jointly on the unit sphere of the realified space
  CMat random(Rng& rng) const {
    CMat c = gaussian_matrix(rng, space.dim(), blocks, space.field);
    return c / c.norm();
  }

  DependencyTuple tuple(const CMat& coords) const {
    DependencyTuple t;
    t.field = space.field;
    t.subfamily = space.subfamily;
    for (int i = 0; i < blocks; ++i) t.components.push_back(space.basis * coords.col(i));
    if (space.field == Field::real)
      for (auto& comp : t.components) comp = comp.real().cast<cplx>();
    // exact zeros where the basis only carries round-off
    const auto keep = t.significant_support();
    std::vector<bool> on(t.size(), false);
    for (auto s : keep) on[s] = true;
    for (auto& comp : t.components)
      for (std::size_t s = 0; s < t.size(); ++s)
        if (!on[s]) comp(static_cast<Eigen::Index>(s)) = 0.0;
    return t;
  }
};

struct Evaluation {
  double merit = 0.0;
  bool violated = false;
  DependencyOutcome certified;
};

/// Merit > 0: certified violation (phase-one value); merit <= 0: minus the realization margin.
inline Evaluation evaluate_tuple(const DependencyTuple& t, const Family& family, bool with_margin) {
  Evaluation ev;
  if (t.support(1e-14).empty()) return ev;
  if (with_margin) {
    const auto margin = dependency_margin(t, family);
    if (margin && *margin > 1e-9) {
      ev.merit = -*margin;
      return ev;
    }
  }
  ev.certified = scaled_dependency_feasible(t, family);
  if (!ev.certified.feasible()) {
    ev.violated = true;
    ev.merit = ev.certified.outcome.merit;
  }
  return ev;
}

}  // namespace detail

/// Searches for a violated tuple over the subfamilies of size up to the
/// subfamily bound.  A violation comes with a Farkas certificate; finding none
/// within the budget is inconclusive.
inline ConsistencyVerdict check_dependency_consistency(const Family& family, const PointAssignment& a,
                                                       const ConsistencyBudget& budget = {}) {
  check_family(family);
  check_assignment(a, family.size());
  const Field f = family.front().field();
  if (a.field != f) throw Error(Errc::field_mismatch, "assignment and family differ in field");
  const int d = family.front().dim();
  const int bound = subfamily_bound(a.k, d, f);

  ConsistencyVerdict verdict;
  const auto subs = consistency_subfamilies(family.size(), bound, budget.prune);
  for (std::size_t si = 0; si < subs.size(); ++si) {
    const DependencySpace space = dependency_space(a, subs[si]);
    ++verdict.subfamilies_checked;
    if (space.dim() == 0) continue;
    const detail::TupleSampler sampler{space, d - a.k};
    Rng rng(derive_seed(budget.seed, si));

    auto record = [&](const DependencyTuple& t, const detail::Evaluation& ev) {
      ++verdict.samples_used;
      verdict.max_merit = std::max(verdict.max_merit, ev.merit);
      if (!ev.violated) return false;
      verdict.kind = ConsistencyVerdict::Kind::inconsistent;
      verdict.tuple = t;
      verdict.problem = ev.certified.problem;
      verdict.farkas = ev.certified.outcome.farkas;
      return true;
    };

    for (std::size_t s = 0; s < budget.samples; ++s) {
      const auto t = sampler.tuple(sampler.random(rng));
      if (record(t, detail::evaluate_tuple(t, family, false))) return verdict;
    }

    // Hill climbing on the realization margin from random starts.
    for (std::size_t r = 0; r < budget.restarts; ++r) {
      CMat cur = sampler.random(rng);
      auto t = sampler.tuple(cur);
      auto ev = detail::evaluate_tuple(t, family, true);
      if (record(t, ev)) return verdict;
      double step = 0.5;
      for (std::size_t it = 1; it < budget.local_steps && step > 1e-3; ++it) {
        CMat cand = cur + step * sampler.random(rng);
        cand /= cand.norm();
        const auto ct = sampler.tuple(cand);
        const auto cev = detail::evaluate_tuple(ct, family, true);
        if (record(ct, cev)) return verdict;
        if (cev.merit > ev.merit) {
          cur = cand;
          ev = cev;
          step = std::min(1.0, step * 1.5);
        } else {
          step *= 0.5;
        }
      }
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Separation consistency (hyperplane case, real only).

struct SeparationResult {
  bool ok = true;
  std::vector<std::size_t> first, second;  // counterexample pair when !ok
};

namespace detail {

inline Polytope merged_hull(const Family& family, const std::vector<std::size_t>& sub) {
  std::vector<CVec> verts;
  for (auto i : sub) verts.insert(verts.end(), family[i].vertices().begin(), family[i].vertices().end());
  return Polytope(family.front().field(), std::move(verts));
}

inline Polytope assigned_hull(const PointAssignment& a, const std::vector<std::size_t>& sub) {
  std::vector<CVec> pts;
  for (auto i : sub) pts.push_back(a.image(i));
  return Polytope(Field::real, std::move(pts));
}

}  // namespace detail

/// Checks every pair of disjoint nonempty subfamilies with |F1| + |F2| <= k + 2:
/// hull disjointness of the sets must carry over to their assigned points.
inline SeparationResult check_separation_consistency(const Family& family, const PointAssignment& a) {
  check_family(family);
  check_assignment(a, family.size());
  if (family.front().field() != Field::real || a.field != Field::real)
    throw Error(Errc::field_mismatch, "separation consistency is defined over R only");
  const std::size_t n = family.size();
  const std::size_t cap = static_cast<std::size_t>(a.k) + 2;

  // label[i]: 0 unused, 1 in F1, 2 in F2; F1 holds the smallest used index.
  std::vector<int> label(n, 0);
  SeparationResult out;
  auto test = [&]() {
    std::vector<std::size_t> f1, f2;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == 1) f1.push_back(i);
      if (label[i] == 2) f2.push_back(i);
    }
    if (f1.empty() || f2.empty() || f1.front() > f2.front()) return true;
    if (polytopes_intersect({detail::merged_hull(family, f1), detail::merged_hull(family, f2)}).feasible()) return true;
    if (!polytopes_intersect({detail::assigned_hull(a, f1), detail::assigned_hull(a, f2)}).feasible()) return true;
    out.ok = false;
    out.first = f1;
    out.second = f2;
    return false;
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> bool {
    if (i == n) return test();
    for (int l = 0; l < 3; ++l) {
      if (l > 0 && used == cap) break;
      label[i] = l;
      if (!self(self, i + 1, used + (l > 0 ? 1 : 0))) return false;
    }
    label[i] = 0;
    return true;
  };
  rec(rec, 0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Witness from a transversal.

struct TransversalWitness {
  AffineFlat flat;
  std::vector<CVec> points;          // q_F in F and on the flat
  std::vector<RVec> coefficients;    // convex weights of q_F over the vertices of F
  PointAssignment assignment;        // P = flat coordinates of the q_F
};

namespace detail {

/// A point of p on the flat from one LP (lambda >= 0 over vertices, free flat coordinates).
inline std::optional<RVec> flat_section_point(const AffineFlat& fl, const Polytope& p) {
  const Field f = p.field();
  const int rd = real_dim(f);
  const Eigen::Index dimr = p.dim() * rd;
  const Eigen::Index m = static_cast<Eigen::Index>(p.size());
  const Eigen::Index kc = fl.k() * rd;
  LpProblem lp;
  lp.A = RMat::Zero(1 + dimr, m + kc);
  lp.b = RVec::Zero(1 + dimr);
  lp.b(0) = 1.0;
  lp.b.tail(dimr) = realify(fl.base(), f);
  lp.nonneg.assign(static_cast<std::size_t>(m + kc), true);
  for (Eigen::Index j = 0; j < m; ++j) {
    lp.A(0, j) = 1.0;
    lp.A.block(1, j, dimr, 1) = realify(p.vertex(static_cast<std::size_t>(j)), f);
  }
  for (int c = 0; c < fl.k(); ++c) {
    const CVec u = fl.dirs().col(c);
    lp.A.block(1, m + c * rd, dimr, 1) = -realify(u, f);
    if (rd == 2) lp.A.block(1, m + c * rd + 1, dimr, 1) = -realify(cplx(0, 1) * u, f);
  }
  for (Eigen::Index c = m; c < m + kc; ++c) lp.nonneg[static_cast<std::size_t>(c)] = false;
  const auto out = lp_feasible(lp);
  if (!out.feasible()) return std::nullopt;
  return RVec(out.point.head(m));
}

inline PointAssignment assignment_from_points(const AffineFlat& fl, const std::vector<CVec>& q) {
  PointAssignment a;
  a.field = fl.field();
  a.k = fl.k();
  for (const auto& x : q) {
    CVec c = fl.coordinates(x);
    if (a.field == Field::real) c = c.real().cast<cplx>();
    std::size_t idx = a.points.size();
    for (std::size_t i = 0; i < a.points.size(); ++i)
      if (a.points[i] == c) idx = i;
    if (idx == a.points.size()) a.points.push_back(c);
    a.phi.push_back(idx);
  }
  return a;
}

}  // namespace detail

/// Chooses q_F in F on the flat and assigns phi(F) = flat coordinates of q_F.
inline TransversalWitness witness_from_transversal(const Family& family, const AffineFlat& fl) {
  check_family(family);
  TransversalWitness w{fl, {}, {}, {}};
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Polytope& p = family[i];
    const StabResult st = flat_stabs(fl, p, tol::feasibility);
    if (!st.stabs) throw Error(Errc::not_a_transversal, "set " + std::to_string(i) + " is not met by the flat");
    RVec coeff = st.coefficients;
    if (auto lam = detail::flat_section_point(fl, p)) {
      RVec c = lam->cwiseMax(0.0);
      c /= c.sum();
      CVec x = CVec::Zero(p.dim());
      for (std::size_t j = 0; j < p.size(); ++j) x += c(static_cast<Eigen::Index>(j)) * p.vertex(j);
      if (fl.distance(x) <= st.distance || fl.distance(x) <= 1e-12) coeff = c;
    }
    CVec x = CVec::Zero(p.dim());
    for (std::size_t j = 0; j < p.size(); ++j) x += coeff(static_cast<Eigen::Index>(j)) * p.vertex(j);
    w.points.push_back(x);
    w.coefficients.push_back(coeff);
  }
  w.assignment = detail::assignment_from_points(fl, w.points);
  return w;
}

/// Re-checks a witness: convex certificates, flat membership, and the coordinate assignment.
inline bool validate_witness(const Family& family, const TransversalWitness& w, double tolerance = tol::feasibility) {
  if (w.points.size() != family.size() || w.coefficients.size() != family.size()) return false;
  if (w.assignment.phi.size() != family.size()) return false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Polytope& p = family[i];
    const RVec& c = w.coefficients[i];
    if (static_cast<std::size_t>(c.size()) != p.size()) return false;
    if (c.minCoeff() < -1e-12 || std::abs(c.sum() - 1.0) > 1e-10) return false;
    CVec x = CVec::Zero(p.dim());
    for (std::size_t j = 0; j < p.size(); ++j) x += c(static_cast<Eigen::Index>(j)) * p.vertex(j);
    if ((x - w.points[i]).norm() > 1e-9) return false;
    if (w.flat.distance(w.points[i]) > tolerance) return false;
    if ((w.flat.coordinates(w.points[i]) - w.assignment.image(i)).norm() > 1e-9) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hadwiger's ordering condition in the plane.

struct HadwigerCheck {
  bool ok = true;
  std::array<std::size_t, 3> triple{};  // family indices, in the order's order, when !ok
};

namespace detail {

inline void check_pairwise_disjoint(const Family& family) {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (polytopes_intersect({family[i], family[j]}).feasible())
        throw Error(Errc::not_disjoint, "sets " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
}

/// Possible-middle masks for every triple i < j < l (bit 0: i, bit 1: j, bit 2: l).
class MiddleTable {
 public:
  explicit MiddleTable(const Family& family) : n_(family.size()), polys_(planar::to_rational(family)) {}

  /// Whether some line meets a, b, c with b between a and c.
  bool between(std::size_t a, std::size_t b, std::size_t c) {
    std::array<std::size_t, 3> s{a, b, c};
    std::sort(s.begin(), s.end());
    const std::size_t key = (s[0] * n_ + s[1]) * n_ + s[2];
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, planar::possible_middles(polys_[s[0]], polys_[s[1]], polys_[s[2]])).first;
    const auto pos = static_cast<unsigned>(std::find(s.begin(), s.end(), b) - s.begin());
    return (it->second >> pos) & 1u;
  }

 private:
  std::size_t n_;
  std::vector<planar::QPolygon> polys_;
  std::map<std::size_t, unsigned> cache_;
};

}  // namespace detail

/// Every triple of the ordering must admit a line meeting it in order.
inline HadwigerCheck hadwiger_order_check(const Family& family, const std::vector<std::size_t>& order) {
  check_family(family);
  if (order.size() != family.size()) throw Error(Errc::invalid_input, "ordering must list every set once");
  std::vector<bool> seen(family.size(), false);
  for (auto i : order) {
    if (i >= family.size() || seen[i]) throw Error(Errc::invalid_input, "ordering must be a permutation");
    seen[i] = true;
  }
  detail::check_pairwise_disjoint(family);
  detail::MiddleTable table(family);
  HadwigerCheck out;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      for (std::size_t l = j + 1; l < order.size(); ++l)
        if (!table.between(order[i], order[j], order[l])) {
          out.ok = false;
          out.triple = {order[i], order[j], order[l]};
          return out;
        }
  return out;
}

inline HadwigerCheck hadwiger_order_check(const Family& family) {
  std::vector<std::size_t> order(family.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return hadwiger_order_check(family, order);
}

/// First ordering in lexicographic order passing the triple condition, if any.
inline std::optional<std::vector<std::size_t>> find_hadwiger_order(const Family& family) {
  check_family(family);
  if (family.size() > 9) throw Error(Errc::too_large, "ordering search is limited to 9 sets");
  detail::check_pairwise_disjoint(family);
  detail::MiddleTable table(family);
  const std::size_t n = family.size();
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> bool {
    if (order.size() == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool fits = true;
      for (std::size_t i = 0; i < order.size() && fits; ++i)
        for (std::size_t j = i + 1; j < order.size() && fits; ++j) fits = table.between(order[i], order[j], c);
      if (!fits) continue;
      used[c] = true;
      order.push_back(c);
      if (self(self)) return true;
      order.pop_back();
      used[c] = false;
    }
    return false;
  };
  if (rec(rec)) return order;
  return std::nullopt;
}

}  // namespace ktrans
