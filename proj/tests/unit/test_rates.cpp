#include <cmath>

#include <gtest/gtest.h>

#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"
#include "sylflow/rates.hpp"
#include "test_support.hpp"

namespace sylflow {
namespace {

using testing::random_matrix;

TEST(RateOfK, SingleNodeWithFullRankIsOne) {
  std::mt19937_64 rng(30);
  const NodeEquation eq{1, random_matrix(rng, 4, 4) + 4.0 * Matrix::Identity(4, 4), Vector::Zero(4)};
  const SpectralRate r = r_of_K({eq}, Matrix::Zero(1, 1), 5.0);
  EXPECT_NEAR(r.rate, 1.0, 1e-10);
  EXPECT_EQ(r.rank, 4);
}

TEST(RateOfK, ScalarTwoNodeCase) {
  // Nodes know y = 1 and nothing: J_L = K [1 -1; -1 1] + diag(1, 0).
  const NodeEquation a{1, Matrix::Constant(1, 1, 1.0), Vector::Constant(1, 1.0)};
  const NodeEquation b{2, Matrix::Zero(1, 1), Vector::Zero(1)};
  for (double K : {0.5, 1.0, 4.0}) {
    const double expected = (1.0 + 2.0 * K - std::sqrt(1.0 + 4.0 * K * K)) / 2.0;
    EXPECT_NEAR(r_of_K({a, b}, make_path(2).laplacian(), K).rate, expected, 1e-12);
  }
}

TEST(RateOfK, MonotoneInKAndBelowLimit) {
  const auto eqs = bc_column_partition(fixtures::example1());
  const Matrix l = make_cycle(5).laplacian();
  const double r0 = r0_limit(eqs);
  double prev = 0.0;
  for (double K : {0.1, 1.0, 10.0, 100.0}) {
    const double r = r_of_K(eqs, l, K).rate;
    EXPECT_GT(r, prev);
    EXPECT_LE(r, r0 * (1.0 + 1e-9));
    prev = r;
  }
  EXPECT_NEAR(r_of_K(eqs, l, 1e4).rate / r0, 1.0, 1e-3);
}

TEST(RateOfK, ZeroOperatorIsDegenerate) {
  const NodeEquation z{1, Matrix::Zero(2, 3), Vector::Zero(2)};
  EXPECT_THROW(r_of_K({z}, Matrix::Zero(1, 1), 1.0), DegenerateProblemError);
  EXPECT_THROW(r0_limit({z, z}), DegenerateProblemError);
  EXPECT_THROW(r_of_K({z, z}, Matrix::Zero(3, 3), 1.0), DimensionError);
}

TEST(R0, ScalarCases) {
  const NodeEquation one{1, Matrix::Constant(1, 1, 3.0), Vector::Zero(1)};
  const NodeEquation zero{2, Matrix::Zero(1, 1), Vector::Zero(1)};
  EXPECT_NEAR(r0_limit({one, one}), 1.0, 1e-14);
  EXPECT_NEAR(r0_limit({one, zero}), 0.5, 1e-14);
}

TEST(R0, IndependentPerNodeRows) {
  // Node i knows coordinate i of R^3: the average of the grams is I / 3.
  std::vector<NodeEquation> eqs;
  for (int i = 0; i < 3; ++i) {
    Matrix h = Matrix::Zero(1, 3);
    h(0, i) = 2.0 + i;
    eqs.push_back({i + 1, h, Vector::Zero(1)});
  }
  EXPECT_NEAR(r0_limit(eqs), 1.0 / 3.0, 1e-14);
}

TEST(FullRankBounds, ScalarBoundsAreTight) {
  const NodeEquation eq{1, Matrix::Constant(1, 1, 2.0), Vector::Zero(1)};
  const auto b = full_rank_bounds({eq});
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(b->lower, 1.0, 1e-14);
  EXPECT_NEAR(b->upper, 1.0, 1e-14);
}

TEST(FullRankBounds, BracketsTheLimitOnExample1) {
  const auto eqs = bc_column_partition(fixtures::example1());
  const auto b = full_rank_bounds(eqs);
  ASSERT_TRUE(b.has_value());
  const double r0 = r0_limit(eqs);
  EXPECT_LE(b->lower, r0);
  EXPECT_LE(r0, b->upper);
}

TEST(FullRankBounds, EmptyWithoutFullRowRank) {
  Matrix h(2, 2);
  h << 1, 1, 2, 2;
  EXPECT_FALSE(full_rank_bounds({{1, h, Vector::Zero(2)}}).has_value());
}

TEST(SymmetrizationBound, MinOfBothTerms) {
  EXPECT_DOUBLE_EQ(rs_upper_bound(1.0, 3.0, make_complete(2)), 3.0);
  EXPECT_DOUBLE_EQ(rs_upper_bound(5.0, 3.0, make_complete(2)), 4.0);
  EXPECT_DOUBLE_EQ(rs_upper_bound(5.0, 0.0, make_cycle(1)), 1.0);
}

TEST(ClusteringRate, ScalarClusterHasRateAPlusBSquared) {
  // n = 1: G = [[(a+b)^2, 0], [-(a+b), 0]] so the only nonzero eigenvalue is (a+b)^2.
  const SylvesterProblem p(Matrix::Constant(1, 1, 1.5), Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 1.0));
  const ClusteringRate r = clustering_rate(clustering_partition(p), 3.0, Matrix::Zero(1, 1), {Matrix::Zero(1, 1)});
  EXPECT_NEAR(r.rate, 4.0, 1e-12);
  EXPECT_EQ(r.rank_G, 1);
}

TEST(ClusteringRate, RankMatchesBoundOnExample1) {
  const ClusterOperators ops = clustering_partition(fixtures::example1());
  const std::vector<Matrix> inner(5, make_cycle(5).laplacian());
  const ClusteringRate r = clustering_rate(ops, 10.0, make_complete(5).laplacian(), inner);
  EXPECT_EQ(r.rank_G, r.rank_bound);
  EXPECT_GT(r.rate, 0.0);
  EXPECT_GE(r.min_real_part, -1e-9);
  EXPECT_EQ(common_kernel_dimension(ops), 0);
}

TEST(RankIdentity, HoldsOnExample1AndIsEmptyForZeroData) {
  const auto eqs = bc_column_partition(fixtures::example1());
  const Matrix l = make_cycle(5).laplacian();
  EXPECT_EQ(r_of_K(eqs, l, 2.0).rank, 125);
  EXPECT_EQ(rank_identity_check(eqs, l, 2.0), std::optional<bool>(true));
  const NodeEquation z{1, Matrix::Zero(1, 2), Vector::Zero(1)};
  EXPECT_FALSE(rank_identity_check({z, z}, make_path(2).laplacian(), 1.0).has_value());
}

TEST(MeasuredRate, RecoversExponentialDecay) {
  std::vector<double> t, e;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(0.5 * k);
    e.push_back(3.0 * std::exp(-2.0 * 0.07 * t.back()));
  }
  const auto fit = fit_log_rate(t, e);
  ASSERT_TRUE(fit.has_value());
  EXPECT_NEAR(fit->rate, 0.07, 1e-12);
  EXPECT_NEAR(fit->r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit->samples, 51u);
  EXPECT_NEAR(*measured_rate(t, e), 0.07, 1e-12);
}

TEST(MeasuredRate, IgnoresTransientOutsideTheTail) {
  std::vector<double> t, e;
  for (int k = 0; k < 40; ++k) {
    t.push_back(k);
    e.push_back(std::exp(-2.0 * 0.1 * k) + (k < 10 ? 50.0 * std::exp(-3.0 * k) : 0.0));
  }
  EXPECT_NEAR(*measured_rate(t, e), 0.1, 1e-9);
}

TEST(MeasuredRate, FloorReachedGivesEmpty) {
  std::vector<double> t, e;
  for (int k = 0; k < 30; ++k) {
    t.push_back(k);
    e.push_back(k < 15 ? std::exp(-k) : 0.0);
  }
  EXPECT_FALSE(measured_rate(t, e).has_value());
  EXPECT_FALSE(measured_rate({0, 1, 2}, {1, 0.5, 0.25}).has_value());
}

TEST(MeasuredRate, InputValidation) {
  EXPECT_THROW(measured_rate({0, 1}, {1}), DimensionError);
  EXPECT_THROW(measured_rate({0, 1}, {1, 1}, 0.0), ContractViolation);
}

}  // namespace
}  // namespace sylflow
