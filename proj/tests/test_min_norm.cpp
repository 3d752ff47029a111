#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ktrans/min_norm.hpp"
#include "ktrans/random.hpp"
#include "oracles.hpp"

using namespace ktrans;

TEST(MinNorm, MidpointOfUnitVectors) {
  RMat pts(2, 2);
  pts << 1, 0, 0, 1;
  const auto r = min_norm_point(pts);
  EXPECT_NEAR(r.point(0), 0.5, 1e-12);
  EXPECT_NEAR(r.point(1), 0.5, 1e-12);
  EXPECT_NEAR(r.squared_norm(), 0.5, 1e-12);
}

TEST(MinNorm, OriginInsideHull) {
  RMat pts(2, 3);
  pts << 1, -1, 0,
         1, 1, -2;
  const auto r = min_norm_point(pts);
  EXPECT_LT(r.point.norm(), 1e-12);
  EXPECT_NEAR(r.coefficients.sum(), 1.0, 1e-12);
}

TEST(MinNorm, OriginAsVertex) {
  RMat pts(3, 3);
  pts << 1, 0, 4,
         2, 0, 5,
         3, 0, 6;
  EXPECT_LT(min_norm_point(pts).point.norm(), 1e-15);
}

TEST(MinNorm, EmptyInputThrows) { EXPECT_THROW(min_norm_point(RMat(2, 0)), Error); }

TEST(MinNorm, MatchesSimplexGridOracle) {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const int dim = 1 + t % 4;
    const int m = 1 + t % 6;
    RMat pts(dim, m);
    const RVec shift = RVec::NullaryExpr(dim, [&] { return gaussian(rng); });
    for (int j = 0; j < m; ++j) pts.col(j) = shift + RVec::NullaryExpr(dim, [&] { return gaussian(rng); });
    const auto r = min_norm_point(pts);

    EXPECT_NEAR(r.point.norm(), oracle::simplex_grid_min_norm(pts), 1e-3) << "instance " << t;
    EXPECT_GE(r.coefficients.minCoeff(), 0.0);
    EXPECT_NEAR(r.coefficients.sum(), 1.0, 1e-10);
    EXPECT_LT((pts * r.coefficients - r.point).norm(), 1e-9);
    EXPECT_GE(min_norm_optimality_gap(pts, r.point), -1e-8);

    // vertex order does not matter
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RMat shuffled(dim, m);
    for (int j = 0; j < m; ++j) shuffled.col(j) = pts.col(perm[j]);
    EXPECT_LT((min_norm_point(shuffled).point - r.point).norm(), 1e-8);
  }
}

TEST(MinNorm, DuplicateAndCollinearVertices) {
  RMat pts(2, 5);
  pts << 1, 1, 2, 3, 1,
         1, 1, 2, 3, 1;
  const auto r = min_norm_point(pts);
  EXPECT_NEAR(r.point(0), 1.0, 1e-12);
  EXPECT_GE(min_norm_optimality_gap(pts, r.point), -1e-8);
}

TEST(MinNorm, ComplexVerticesUseRealifiedGeometry) {
  CVec a(1), b(1);
  a << cplx(1, 0);
  b << cplx(0, 1);
  const auto r = min_norm_point(std::vector<CVec>{a, b}, Field::complex);
  EXPECT_NEAR(r.point(0), 0.5, 1e-12);
  EXPECT_NEAR(r.point(1), 0.5, 1e-12);
}
