#include <gtest/gtest.h>

#include "scenarios.hpp"
#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"
#include "sylflow/oracle.hpp"
#include "sylflow/partition.hpp"
#include "test_support.hpp"

namespace sylflow {
namespace {

using testing::random_matrix;

SylvesterProblem random_problem(std::mt19937_64& rng, Index n, Index m) {
  return {random_matrix(rng, n, n), random_matrix(rng, m, m), random_matrix(rng, n, m)};
}

TEST(SylvesterProblem, ValidatesShapes) {
  EXPECT_THROW(SylvesterProblem(Matrix::Zero(2, 3), Matrix::Zero(2, 2), Matrix::Zero(2, 2)), DimensionError);
  EXPECT_THROW(SylvesterProblem(Matrix::Zero(2, 2), Matrix::Zero(3, 3), Matrix::Zero(2, 2)), DimensionError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(SylvesterProblem(bad, Matrix::Zero(2, 2), Matrix::Zero(2, 2)), NumericError);
}

TEST(SylvesterOperator, ActsAsAXPlusXB) {
  std::mt19937_64 rng(10);
  const SylvesterProblem p = random_problem(rng, 3, 4);
  const Matrix x = random_matrix(rng, 3, 4);
  EXPECT_LE((sylvester_operator(p) * vec(x) - vec(p.A() * x + x * p.B())).norm(), 1e-13);
}

TEST(BcColumn, StacksToTheOperatorAndHoldsTheSolution) {
  std::mt19937_64 rng(11);
  const SylvesterProblem p = random_problem(rng, 3, 4);
  const auto eqs = bc_column_partition(p);
  ASSERT_EQ(eqs.size(), 4u);
  EXPECT_LE((stack_operators(eqs) - sylvester_operator(p)).norm(), 1e-14);
  EXPECT_LE((stack_rhs(eqs) - vec(p.C())).norm(), 1e-15);
  const Vector xs = vec(direct_solve(p).X_star);
  for (const auto& e : eqs) EXPECT_LE((e.H * xs - e.c).norm(), 1e-9);
  EXPECT_EQ(eqs[2].node_id, 3);
}

TEST(AcRow, UnknownIsTransposedSolution) {
  std::mt19937_64 rng(12);
  const SylvesterProblem p = random_problem(rng, 4, 3);
  const auto eqs = ac_row_partition(p);
  ASSERT_EQ(eqs.size(), 4u);
  const Vector xt = vec(direct_solve(p).X_star.transpose());
  for (const auto& e : eqs) EXPECT_LE((e.H * xt - e.c).norm(), 1e-9);
}

TEST(Grouped, ValidatesGroups) {
  std::mt19937_64 rng(13);
  const SylvesterProblem p = random_problem(rng, 3, 4);
  EXPECT_THROW(grouped_column_partition(p, {{1, 2}, {}}), PartitionError);
  EXPECT_THROW(grouped_column_partition(p, {{1, 2}, {3}}), PartitionError);
  EXPECT_THROW(grouped_column_partition(p, {{1, 5}, {2, 3, 4}}), PartitionError);
  const auto eqs = grouped_column_partition(p, {{1, 2}, {2, 3, 4}});
  ASSERT_EQ(eqs.size(), 2u);
  EXPECT_EQ(eqs[0].row_count(), 6);
  EXPECT_EQ(eqs[1].row_count(), 9);
  const Vector xs = vec(direct_solve(p).X_star);
  for (const auto& e : eqs) EXPECT_LE((e.H * xs - e.c).norm(), 1e-9);
}

TEST(HighRes, NodesAreRowsOfTheOperator) {
  std::mt19937_64 rng(14);
  const SylvesterProblem p = random_problem(rng, 4, 4);
  const auto eqs = high_res_partition(p);
  ASSERT_EQ(eqs.size(), 16u);
  const Matrix h = sylvester_operator(p);
  for (Index k = 0; k < 4; ++k) {
    for (Index l = 0; l < 4; ++l) {
      const auto& e = eqs[k * 4 + l];
      EXPECT_LE((e.H - h.row(k * 4 + l)).norm(), 1e-15);
      EXPECT_DOUBLE_EQ(e.c(0), p.C()(l, k));
    }
  }
  EXPECT_THROW(high_res_partition(random_problem(rng, 2, 3)), DimensionError);
}

TEST(LyapunovSym, NodeCountAndSolutionMembership) {
  const Matrix a = fixtures::example4_A();
  const Matrix c = -Matrix::Identity(6, 6);
  const auto eqs = lyapunov_sym_partition(a, c);
  ASSERT_EQ(eqs.size(), 21u);
  const Vector xs = vec(direct_solve(SylvesterProblem::lyapunov(a, c)).X_star);
  for (const auto& e : eqs) {
    EXPECT_EQ(e.row_count(), 2);
    EXPECT_LE((e.H * xs - e.c).norm(), 1e-9);
  }
  Matrix asym = c;
  asym(0, 1) = 1.0;
  EXPECT_THROW(lyapunov_sym_partition(a, asym), ContractViolation);
}

TEST(LyapunovSym, NodeIndexingMatchesRowPairs) {
  std::mt19937_64 rng(15);
  const Matrix a = random_matrix(rng, 3, 3);
  const Matrix c0 = random_matrix(rng, 3, 3);
  const Matrix c = c0 + c0.transpose();
  const Matrix h = sylvester_operator(SylvesterProblem::lyapunov(a, c));
  const auto eqs = lyapunov_sym_partition(a, c);
  const int n = 3;
  for (int k = 1; k <= n; ++k) {
    for (int l = k; l <= n; ++l) {
      const int g = (k - 1) * n + l - k * (k - 1) / 2;
      const auto& e = eqs[g - 1];
      EXPECT_LE((e.H.row(0) - h.row((k - 1) * n + (l - 1))).norm(), 1e-15);
      EXPECT_LE((e.H.row(1) - h.row((l - 1) * n + (k - 1))).norm(), 1e-15);
      EXPECT_DOUBLE_EQ(e.c(0), c(l - 1, k - 1));
      EXPECT_DOUBLE_EQ(e.c(1), c(k - 1, l - 1));
    }
  }
}

TEST(FullRowColumn, AugmentedSystemContainsTheSolution) {
  std::mt19937_64 rng(16);
  const SylvesterProblem p = random_problem(rng, 3, 3);
  const Graph g = make_path(3);
  const auto eqs = full_rowcol_partition(p, g);
  ASSERT_EQ(eqs.size(), 3u);
  EXPECT_EQ(eqs[0].unknown_dim(), 9 * 4);
  const Vector lim = flow_limit(eqs, std::vector<Vector>(3, Vector::Zero(36)));
  EXPECT_LE((lim.head(9) - vec(direct_solve(p).X_star)).norm(), 1e-9);
  EXPECT_THROW(full_rowcol_partition(p, make_path(2)), DimensionError);
}

TEST(FullRowColumn, RowBlocksForExampleFour) {
  const SylvesterProblem p = fixtures::example4();
  const auto eqs = full_rowcol_partition(p, fixtures::example4_graph(), fixtures::example4_row_blocks());
  ASSERT_EQ(eqs.size(), 3u);
  EXPECT_EQ(eqs[0].unknown_dim(), 36 * 4);
  const Vector lim = flow_limit(eqs, std::vector<Vector>(3, Vector::Zero(144)));
  EXPECT_LE((unvec(lim.head(36), 6, 6) - direct_solve(p).X_star).norm(), 1e-9);
  EXPECT_THROW(full_rowcol_partition(p, fixtures::example4_graph(), {{1, 2}, {2, 3}, {5, 6}}),
               PartitionError);
}

TEST(Clustering, ClusterResidualsVanishAtTheSolution) {
  const SylvesterProblem p = fixtures::example1();
  const ClusterOperators ops = clustering_partition(p);
  ASSERT_EQ(ops.n, 5);
  const Vector xs = vec(direct_solve(p).X_star);
  for (int i = 0; i < 5; ++i) {
    const Vector r = ops.M[i] * xs - ops.C_tilde[i];
    Vector block_sum = Vector::Zero(5);
    for (int j = 0; j < 5; ++j) block_sum += r.segment(j * 5, 5);
    EXPECT_LE(block_sum.norm(), 1e-10);
  }
  EXPECT_EQ(ops.stacked_M().rows(), 125);
  EXPECT_EQ(ops.stacked_C().size(), 125);
}

TEST(Consistency, ClassifiesCases) {
  EXPECT_EQ(consistency_check(fixtures::example1()).solvability, SolvabilityCase::kUnique);
  std::mt19937_64 rng(17);
  const auto singular = cli::random_consistent_problem(rng, false);
  const auto report = consistency_check(singular);
  EXPECT_EQ(report.solvability, SolvabilityCase::kInfinite);
  EXPECT_EQ(report.rank, 8);
  const SylvesterProblem none(Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, -1.0),
                              Matrix::Constant(1, 1, 1.0));
  EXPECT_EQ(consistency_check(none).solvability, SolvabilityCase::kNone);
  EXPECT_EQ(to_string(SolvabilityCase::kInfinite), "II");
}

TEST(Schemes, NamesRoundTrip) {
  for (const char* name : {"bc-column", "ac-row", "grouped", "high-res", "lyapunov-sym",
                           "full-row-column", "clustering"}) {
    const auto s = parse_partition_scheme(name);
    ASSERT_TRUE(s.has_value()) << name;
    EXPECT_EQ(to_string(*s), name);
  }
  EXPECT_FALSE(parse_partition_scheme("rows").has_value());
}

TEST(MakePartition, SchemeSpecificShapes) {
  const SylvesterProblem p = fixtures::example1();
  EXPECT_EQ(make_partition(p, PartitionScheme::kHighRes).node_count(), 25);
  const Partition ac = make_partition(p, PartitionScheme::kAcRow);
  EXPECT_TRUE(ac.transposed);
  const Partition cl = make_partition(p, PartitionScheme::kClustering);
  EXPECT_EQ(cl.node_count(), 5);
  EXPECT_EQ(cl.node_dim(), 25);
  EXPECT_THROW(make_partition(p, PartitionScheme::kLyapunovSym), ContractViolation);
  EXPECT_THROW(make_partition(p, PartitionScheme::kFullRowColumn), ContractViolation);
}

}  // namespace
}  // namespace sylflow
