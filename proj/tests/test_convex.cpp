#include <gtest/gtest.h>

#include <cmath>

#include "ktrans/convex.hpp"
#include "ktrans/random.hpp"

using namespace ktrans;

namespace {

CVec rv(std::initializer_list<double> xs) {
  CVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Polytope poly(std::initializer_list<std::initializer_list<double>> vs) {
  std::vector<CVec> out;
  for (auto v : vs) out.push_back(rv(v));
  return Polytope(Field::real, out);
}

// Outward squares on the edges of the triangle (0,0), (2,0), (0,2): pairs
// meet at a triangle vertex, while the three outer half-planes of a triangle
// share no point (barycentric coordinates cannot all be nonpositive).
std::vector<Polytope> edge_squares() {
  return {poly({{0, 0}, {2, 0}, {2, -2}, {0, -2}}),
          poly({{0, 0}, {0, 2}, {-2, 2}, {-2, 0}}),
          poly({{2, 0}, {0, 2}, {2, 4}, {4, 2}})};
}

// l1 residual of the scaled-dependency equations for explicit (r, q), computed
// straight from the defining sums.
double direct_residual(const DependencyTuple& t, const std::vector<double>& r, const std::vector<CVec>& q) {
  double res = 0.0;
  for (const auto& comp : t.components) {
    cplx s0 = 0.0;
    CVec s1 = CVec::Zero(q.front().size());
    for (std::size_t s = 0; s < t.size(); ++s) {
      s0 += r[s] * comp(static_cast<Eigen::Index>(s));
      s1 += r[s] * comp(static_cast<Eigen::Index>(s)) * q[s];
    }
    res += std::abs(s0.real()) + std::abs(s0.imag());
    for (Eigen::Index c = 0; c < s1.size(); ++c) res += std::abs(s1(c).real()) + std::abs(s1(c).imag());
  }
  return res;
}

// Grid over the simplex of all (set, vertex) weights at the given step.
double grid_min_residual(const DependencyTuple& t, const Family& fam, double step) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t s = 0; s < t.size(); ++s)
    for (std::size_t j = 0; j < fam[t.subfamily[s]].size(); ++j) slots.emplace_back(s, j);
  const int total = static_cast<int>(std::lround(1.0 / step));
  std::vector<int> parts(slots.size(), 0);
  double best = std::numeric_limits<double>::infinity();

  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == slots.size()) {
      parts[i] = left;
      std::vector<double> r(t.size(), 0.0);
      std::vector<CVec> w(t.size(), CVec::Zero(fam.front().dim()));
      for (std::size_t u = 0; u < slots.size(); ++u) {
        const double lam = parts[u] * step;
        r[slots[u].first] += lam;
        w[slots[u].first] += lam * fam[t.subfamily[slots[u].first]].vertex(slots[u].second);
      }
      std::vector<CVec> q(t.size());
      for (std::size_t s = 0; s < t.size(); ++s)
        q[s] = r[s] > 0 ? CVec(w[s] / r[s]) : fam[t.subfamily[s]].vertex(0);
      best = std::min(best, direct_residual(t, r, q));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
  return best;
}

}  // namespace

TEST(Intersect, SameSingletonTwice) {
  const auto p = poly({{1.5, -2.0}});
  const auto r = polytopes_intersect({p, p});
  ASSERT_TRUE(r.feasible());
  EXPECT_LT((r.point - rv({1.5, -2.0})).norm(), 1e-9);
}

TEST(Intersect, DistinctSingletons) {
  const auto r = polytopes_intersect({poly({{0}}), poly({{1}})});
  ASSERT_FALSE(r.feasible());
  EXPECT_TRUE(validate_farkas(r.problem, r.outcome.farkas));
}

TEST(Intersect, EdgeSquaresPairwiseButNotJointly) {
  const auto sq = edge_squares();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_TRUE(polytopes_intersect({sq[i], sq[j]}).feasible());
  const auto all = polytopes_intersect(sq);
  ASSERT_FALSE(all.feasible());
  EXPECT_TRUE(validate_farkas(all.problem, all.outcome.farkas));
}

TEST(Intersect, SingletonsMatchCoordinateEquality) {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const CVec a = gaussian_vector(rng, 3, Field::real);
    const CVec b = t % 2 ? a : gaussian_vector(rng, 3, Field::real);
    const auto r = polytopes_intersect({Polytope::singleton(Field::real, a), Polytope::singleton(Field::real, b)});
    EXPECT_EQ(r.feasible(), a == b);
  }
}

TEST(FlatStabs, ThroughVertexAndAtDistanceOne) {
  CMat dirs(2, 1);
  dirs << 1, 0;
  const AffineFlat line(Field::real, rv({0, 0}), dirs);
  EXPECT_TRUE(flat_stabs(line, poly({{3, 0}, {4, 5}, {2, 2}})).stabs);
  const auto far = flat_stabs(line, poly({{7, 1}}), 1e-6);
  EXPECT_FALSE(far.stabs);
  EXPECT_NEAR(far.distance, 1.0, 1e-12);
}

TEST(FlatStabs, SegmentCrossingTheFlat) {
  CMat dirs(2, 1);
  dirs << 1, 0;
  const AffineFlat line(Field::real, rv({0, 0}), dirs);
  const auto r = flat_stabs(line, poly({{1, 1}, {2, -3}}));
  EXPECT_TRUE(r.stabs);
  EXPECT_LT(std::abs(r.point(1)), 1e-9);
}

TEST(Caratheodory, AlreadySmall) {
  RMat pts(1, 2);
  pts << 1, -1;
  const auto r = caratheodory_reduce(pts, RVec::Constant(2, 0.5));
  EXPECT_EQ(r.indices.size(), 2u);
}

TEST(Caratheodory, SymmetricLine) {
  RMat pts(1, 5);
  pts << -2, -1, 0, 1, 2;
  const auto r = caratheodory_reduce(pts, RVec::Constant(5, 0.2));
  EXPECT_LE(r.indices.size(), 2u);
  double s = 0.0;
  for (std::size_t i = 0; i < r.indices.size(); ++i) s += r.weights(static_cast<Eigen::Index>(i)) * pts(0, static_cast<Eigen::Index>(r.indices[i]));
  EXPECT_LT(std::abs(s), 1e-8);
}

TEST(Caratheodory, RejectsNonzeroCombination) {
  RMat pts(1, 2);
  pts << 1, 2;
  EXPECT_THROW(caratheodory_reduce(pts, RVec::Constant(2, 0.5)), Error);
  pts << 1, -1;
  EXPECT_THROW(caratheodory_reduce(pts, RVec::Constant(2, 0.7)), Error);
}

TEST(Caratheodory, RandomInstancesInR3) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    RVec w = RVec::NullaryExpr(10, [&] { return uniform(rng, 0.1, 1.0); });
    w /= w.sum();
    RMat pts(3, 10);
    for (int j = 0; j < 9; ++j) pts.col(j) = RVec::NullaryExpr(3, [&] { return gaussian(rng); });
    pts.col(9) = -(pts.leftCols(9) * w.head(9)) / w(9);
    const auto r = caratheodory_reduce(pts, w);
    EXPECT_LE(r.indices.size(), 4u);
    EXPECT_GT(r.weights.minCoeff(), 0.0);
    EXPECT_NEAR(r.weights.sum(), 1.0, 1e-12);
    RVec sum = RVec::Zero(3);
    for (std::size_t i = 0; i < r.indices.size(); ++i)
      sum += r.weights(static_cast<Eigen::Index>(i)) * pts.col(static_cast<Eigen::Index>(r.indices[i]));
    EXPECT_LT(sum.norm(), 1e-8);
  }
}

TEST(ScaledDependency, HellyEncodingWithCommonPoint) {
  // three triangles in R^2 all containing x* = (1, 1); k = 0 so P = {0}
  const Family fam{poly({{0, 0}, {3, 0}, {0, 3}}), poly({{1, 1}, {5, 1}, {1, 4}}), poly({{2, 2}, {-1, 1}, {1, -2}})};
  DependencyTuple t;
  t.subfamily = {0, 1, 2};
  t.components = {rv({1, -1, 0}), rv({1, 0, -1})};
  const auto o = scaled_dependency_feasible(t, fam);
  ASSERT_TRUE(o.feasible());
  EXPECT_LT(dependency_residual(t, o.r, o.q), 1e-8);
  // the realized q's coincide
  EXPECT_LT((o.q[0] - o.q[1]).norm(), 1e-6);
  EXPECT_LT((o.q[0] - o.q[2]).norm(), 1e-6);
}

TEST(ScaledDependency, DistinctSingletonsAreInfeasible) {
  const Family fam{poly({{0}}), poly({{1}})};
  DependencyTuple t;
  t.subfamily = {0, 1};
  t.components = {rv({1, -1})};
  const auto o = scaled_dependency_feasible(t, fam);
  ASSERT_FALSE(o.feasible());
  EXPECT_TRUE(validate_farkas(o.problem, o.outcome.farkas));
}

TEST(ScaledDependency, EmptySupportThrows) {
  const Family fam{poly({{0}}), poly({{1}})};
  DependencyTuple t;
  t.subfamily = {0, 1};
  t.components = {rv({0, 0})};
  try {
    scaled_dependency_feasible(t, fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_support);
  }
}

TEST(ScaledDependency, InvariantUnderComponentRescaling) {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    Family fam;
    for (int s = 0; s < 3; ++s) {
      std::vector<CVec> vs;
      for (int j = 0; j < 2; ++j) vs.push_back(gaussian_vector(rng, 2, Field::real));
      fam.emplace_back(Field::real, vs);
    }
    DependencyTuple tup;
    tup.subfamily = {0, 1, 2};
    for (int i = 0; i < 2; ++i) {
      CVec c = gaussian_vector(rng, 3, Field::real);
      c.array() -= c.mean();
      tup.components.push_back(c);
    }
    DependencyTuple scaled = tup;
    for (auto& c : scaled.components) c *= (uniform(rng) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.1, 10.0);
    EXPECT_EQ(scaled_dependency_feasible(tup, fam).feasible(), scaled_dependency_feasible(scaled, fam).feasible());
  }
}

TEST(ScaledDependency, MeritMatchesGridBruteForce) {
  Rng rng(99);
  int infeasible = 0;
  for (int t = 0; t < 100; ++t) {
    const int nsets = 2 + t % 2;
    Family fam;
    for (int s = 0; s < nsets; ++s) {
      const int nv = (t / 2 + s) % 2 + 1;
      std::vector<CVec> vs;
      const CVec center = gaussian_vector(rng, 2, Field::real);
      for (int j = 0; j < nv; ++j) vs.push_back(center + 0.7 * gaussian_vector(rng, 2, Field::real));
      fam.emplace_back(Field::real, vs);
    }
    DependencyTuple tup;
    for (int s = 0; s < nsets; ++s) tup.subfamily.push_back(static_cast<std::size_t>(s));
    // d - k = 1: a single dependency on P = {0} (k = 0 slice of the checker)
    CVec c = gaussian_vector(rng, nsets, Field::real);
    c.array() -= c.mean();
    tup.components.push_back(c);

    const auto o = scaled_dependency_feasible(tup, fam);
    const double step = 0.02;
    const double grid = grid_min_residual(tup, fam, step);
    const RMat& A = o.problem.A;
    const double lip = A.topRows(A.rows() - 1).cwiseAbs().colwise().sum().maxCoeff();
    const double slack = lip * step * static_cast<double>(A.cols());

    // LP merit is the exact minimum of the l1 residual over the grid's domain.
    EXPECT_GE(grid, o.outcome.merit - 1e-9) << "instance " << t;
    EXPECT_LE(grid, o.outcome.merit + slack) << "instance " << t;
    if (!o.feasible()) {
      ++infeasible;
      EXPECT_GT(grid, 0.0);
      EXPECT_TRUE(validate_farkas(o.problem, o.outcome.farkas));
    } else {
      EXPECT_LT(dependency_residual(tup, o.r, o.q), 1e-8);
    }
  }
  EXPECT_GT(infeasible, 10);
}
