#include <gtest/gtest.h>

#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"
#include "sylflow/oracle.hpp"
#include "test_support.hpp"

namespace sylflow {
namespace {

using testing::random_matrix;

TEST(DirectSolve, SatisfiesTheEquation) {
  const SylvesterProblem p = fixtures::example1();
  const OracleSolution s = direct_solve(p);
  EXPECT_EQ(s.solvability, SolvabilityCase::kUnique);
  EXPECT_LE((p.A() * s.X_star + s.X_star * p.B() - p.C()).norm(), 1e-10 * p.C().norm());
  EXPECT_LE(s.residual, 1e-10);
}

TEST(DirectSolve, MinNormForSingularOperator) {
  // a_1 + b_1 = 0, consistent data.
  Matrix a(2, 2), b(2, 2), x0(2, 2);
  a << 1, 0, 0, 2;
  b << -1, 0, 0, 1;
  x0 << 1, 2, 3, 4;
  const SylvesterProblem p(a, b, a * x0 + x0 * b);
  const OracleSolution s = direct_solve(p);
  EXPECT_EQ(s.solvability, SolvabilityCase::kInfinite);
  EXPECT_TRUE(s.is_min_norm);
  EXPECT_NEAR(s.X_star(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(s.X_star(1, 1), 4.0, 1e-12);
}

TEST(DirectSolve, LyapunovFixtureMatchesPrintedLimit) {
  const OracleSolution s = direct_solve(fixtures::example4());
  EXPECT_LE((s.X_star - fixtures::example4_P_star()).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_TRUE(positive_definite_check(s.X_star));
}

TEST(FlowLimit, AverageOfProjections) {
  Matrix h(1, 2);
  h << 1, 0;
  const NodeEquation a{1, h, Vector::Constant(1, 2.0)};
  const NodeEquation b{2, Matrix::Zero(1, 2), Vector::Zero(1)};
  Vector x1(2), x2(2);
  x1 << 0, 4;
  x2 << 10, -2;
  const Vector lim = flow_limit({a, b}, {x1, x2});
  EXPECT_NEAR(lim(0), 2.0, 1e-14);
  EXPECT_NEAR(lim(1), 1.0, 1e-14);
}

TEST(FlowLimit, InconsistentEquationsAreInapplicable) {
  const NodeEquation a{1, Matrix::Identity(1, 1), Vector::Constant(1, 1.0)};
  const NodeEquation b{2, Matrix::Identity(1, 1), Vector::Constant(1, 2.0)};
  EXPECT_THROW(flow_limit({a, b}, {Vector::Zero(1), Vector::Zero(1)}), InapplicableError);
  EXPECT_THROW(flow_limit({a, b}, {Vector::Zero(1)}), DimensionError);
}

TEST(LinearFlowLimit, KernelComponentIsKept) {
  AffineLinearSystem sys;
  sys.system = Matrix::Zero(2, 2);
  sys.system(0, 0) = 2.0;
  sys.offset = Vector::Zero(2);
  sys.offset(0) = 6.0;
  Vector x0(2);
  x0 << 100, -5;
  const Vector lim = linear_flow_limit(sys, x0);
  EXPECT_NEAR(lim(0), 3.0, 1e-14);
  EXPECT_NEAR(lim(1), -5.0, 1e-14);
  sys.offset(1) = 1.0;
  EXPECT_THROW(linear_flow_limit(sys, x0), InapplicableError);
}

TEST(LeastSquaresReference, SolvesNormalEquations) {
  std::mt19937_64 rng(40);
  Matrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 2;
  b << -1, 0, 0, 3;
  const SylvesterProblem p(a, b, random_matrix(rng, 2, 2));
  const Matrix h = sylvester_operator(p);
  const Vector x = least_squares_reference(p);
  EXPECT_LE((h.transpose() * (h * x - vec(p.C()))).norm(), 1e-12);
}

TEST(PositiveDefinite, Checks) {
  EXPECT_TRUE(positive_definite_check(Matrix::Identity(3, 3)));
  Matrix skew(2, 2);
  skew << 1, 5, -5, 1;
  EXPECT_TRUE(positive_definite_check(skew));
  EXPECT_FALSE(positive_definite_check(-Matrix::Identity(2, 2)));
  EXPECT_FALSE(positive_definite_check(Matrix::Zero(2, 2)));
}

TEST(IntersectionProjector, LandsOnEveryNodeSet) {
  std::mt19937_64 rng(41);
  const auto eqs = bc_column_partition(fixtures::example1());
  const AffineProjector cap = intersection_projector(eqs);
  const Vector y = cap.apply(random_matrix(rng, 25, 1));
  for (const auto& e : eqs) EXPECT_LE((e.H * y - e.c).norm(), 1e-9);
}

}  // namespace
}  // namespace sylflow
