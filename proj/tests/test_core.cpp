#include <gtest/gtest.h>

#include "ktrans/core.hpp"
#include "ktrans/random.hpp"

using namespace ktrans;

namespace {

CVec rv(std::initializer_list<double> xs) {
  CVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(Lift, SingletonAtOrigin) {
  const Polytope p = Polytope::singleton(Field::real, rv({0.0}));
  const Polytope l = lift_to_slice(p);
  EXPECT_EQ(l.dim(), 2);
  EXPECT_EQ(l.vertex(0), rv({0.0, 1.0}));
}

TEST(Lift, Segment) {
  const Polytope p(Field::real, {rv({1.0}), rv({-1.0})});
  const Polytope l = lift_to_slice(p);
  EXPECT_EQ(l.vertex(0), rv({1.0, 1.0}));
  EXPECT_EQ(l.vertex(1), rv({-1.0, 1.0}));
}

TEST(Lift, RoundTripIsIdentity) {
  Rng rng(3);
  for (Field f : {Field::real, Field::complex}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<CVec> vs;
      for (int j = 0; j < 4; ++j) vs.push_back(gaussian_vector(rng, 3, f));
      const Polytope p(f, vs);
      const Polytope l = lift_to_slice(p);
      for (const auto& v : l.vertices()) EXPECT_EQ(v(3), cplx(1.0, 0.0));
      EXPECT_EQ(delift(l), p);
    }
  }
}

TEST(Polytope, RejectsEmptyAndMixedDimensions) {
  EXPECT_THROW(Polytope(Field::real, {}), Error);
  EXPECT_THROW(Polytope(Field::real, {rv({1.0}), rv({1.0, 2.0})}), Error);
  CVec c(1);
  c(0) = cplx(0.0, 1.0);
  EXPECT_THROW(Polytope(Field::real, {c}), Error);
}

TEST(Orthonormalize, StandardBasisUnchanged) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({1, 0, 0}), rv({0, 1, 0})}, Field::real);
  EXPECT_LT((fr.vector(0) - rv({1, 0, 0})).norm(), 1e-15);
  EXPECT_LT((fr.vector(1) - rv({0, 1, 0})).norm(), 1e-15);
}

TEST(Orthonormalize, GramSchmidtByHand) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({2, 0}), rv({1, 1})}, Field::real);
  EXPECT_LT((fr.vector(0) - rv({1, 0})).norm(), 1e-15);
  EXPECT_LT((fr.vector(1) - rv({0, 1})).norm(), 1e-15);
}

TEST(Orthonormalize, RandomInputsHaveIdentityGram) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const Field f = t % 2 ? Field::complex : Field::real;
    const int dim = 2 + t % 5;
    const int n = 1 + t % dim;
    const Frame fr = orthonormalize(gaussian_matrix(rng, dim, n, f), f);
    EXPECT_LT(fr.gram_defect(), 1e-10);
  }
}

TEST(Orthonormalize, DependentInputThrows) {
  try {
    orthonormalize(std::vector<CVec>{rv({1, 2}), rv({2, 4})}, Field::real);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dependent_input);
  }
  // complex multiples are F-dependent
  CVec a = rv({1, 0});
  CVec b = cplx(0, 1) * a;
  EXPECT_THROW(orthonormalize(std::vector<CVec>{a, b}, Field::complex), Error);
}

TEST(Project, CoefficientOnAxis) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({1, 0})}, Field::real);
  const CVec c = project_to_frame(fr, rv({3, 4}));
  ASSERT_EQ(c.size(), 1);
  EXPECT_DOUBLE_EQ(c(0).real(), 3.0);
}

TEST(Project, DimensionMismatch) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({1, 0})}, Field::real);
  EXPECT_THROW(project_to_frame(fr, rv({1, 2, 3})), Error);
}

TEST(Project, SpanIsFixedAndPythagorasHolds) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Field f = t % 2 ? Field::complex : Field::real;
    const Frame fr = random_frame(rng, 5, 1 + t % 4, f);
    const CVec inside = fr.matrix() * gaussian_vector(rng, fr.size(), f);
    EXPECT_LT((reconstruct(fr, project_to_frame(fr, inside)) - inside).norm(), 1e-10);

    const CVec x = gaussian_vector(rng, 5, f);
    const CVec coeffs = project_to_frame(fr, x);
    const CVec rec = reconstruct(fr, coeffs);
    EXPECT_NEAR(x.squaredNorm(), coeffs.squaredNorm() + (x - rec).squaredNorm(), 1e-9);
    EXPECT_LE(coeffs.norm(), x.norm() + 1e-12);
    // idempotent
    EXPECT_LT((project_to_frame(fr, rec) - coeffs).norm(), 1e-10);
  }
}

TEST(FlatFromFrame, AxisFrameGivesVerticalLine) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({1, 0, 0})}, Field::real);
  const AffineFlat fl = flat_from_orthogonal_frame(fr);
  EXPECT_EQ(fl.k(), 1);
  EXPECT_LT(fl.base().norm(), 1e-15);
  EXPECT_NEAR(std::abs(fl.dirs()(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(fl.dirs()(0, 0)), 0.0, 1e-15);
}

TEST(FlatFromFrame, SliceDegenerate) {
  const Frame fr = orthonormalize(std::vector<CVec>{rv({0, 0, 1})}, Field::real);
  try {
    flat_from_orthogonal_frame(fr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::slice_degenerate);
  }
}

TEST(FlatFromFrame, RecoveredPointsLiftIntoComplement) {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const Field f = t % 2 ? Field::complex : Field::real;
    const int d = 2 + t % 3;
    const int k = t % d;
    const Frame fr = random_frame(rng, d + 1, d - k, f);
    const AffineFlat fl = flat_from_orthogonal_frame(fr);
    EXPECT_EQ(fl.k(), k);
    EXPECT_LT(fl.j_closure_defect(), 1e-9);
    for (int s = 0; s < 10; ++s) {
      const CVec x = fl.at(gaussian_vector(rng, k, f));
      for (int i = 0; i < fr.size(); ++i) EXPECT_LT(std::abs(inner(lift(x), fr.vector(i))), 1e-9);
    }
    // the frame of the recovered flat spans the same space
    const Frame back = orthogonal_frame_of_flat(fl);
    const CMat proj = fr.matrix() * fr.matrix().adjoint() - back.matrix() * back.matrix().adjoint();
    EXPECT_LT(proj.norm(), 1e-8);
  }
}

TEST(FlatContains, BasepointDirectionAndNormal) {
  CMat dirs(2, 1);
  dirs << 1.0, 0.0;
  const AffineFlat fl(Field::real, rv({0.0, 2.0}), dirs);
  const double tol = 1e-6;
  EXPECT_TRUE(flat_contains_point(fl, fl.base(), tol));
  EXPECT_TRUE(flat_contains_point(fl, fl.base() + fl.dirs().col(0), tol));
  EXPECT_FALSE(flat_contains_point(fl, fl.base() + rv({0.0, 10 * tol}), tol));
}

TEST(FlatContains, ComplexFlatsAreJClosed) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Frame dirs = random_frame(rng, 4, 2, Field::complex);
    const AffineFlat fl(Field::complex, gaussian_vector(rng, 4, Field::complex), dirs.matrix());
    EXPECT_LT(fl.j_closure_defect(), 1e-9);
    // i * direction stays on the flat
    EXPECT_TRUE(flat_contains_point(fl, fl.base() + cplx(0, 1) * fl.dirs().col(0), 1e-9));
  }
}

TEST(Realify, InterleavesRealAndImaginary) {
  CVec v(2);
  v << cplx(1, 2), cplx(3, 4);
  const RVec r = realify(v, Field::complex);
  EXPECT_EQ(r, (RVec(4) << 1, 2, 3, 4).finished());
  EXPECT_EQ(complexify(r, Field::complex), v);
  EXPECT_EQ(apply_j(r), (RVec(4) << -2, 1, -4, 3).finished());
}
