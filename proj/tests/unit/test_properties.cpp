#include <gtest/gtest.h>

#include "sylflow/errors.hpp"
#include "sylflow/oracle.hpp"
#include "sylflow/rates.hpp"
#include "sylflow/simulate.hpp"
#include "test_support.hpp"

namespace sylflow {
namespace {

using testing::random_matrix;

// Well-conditioned random problem: diagonally shifted A and B keep the
// eigenvalue sums away from zero.
SylvesterProblem random_problem(std::mt19937_64& rng, int n, int m) {
  const Matrix a = random_matrix(rng, n, n) + 3.0 * Matrix::Identity(n, n);
  const Matrix b = random_matrix(rng, m, m) + 3.0 * Matrix::Identity(m, m);
  return {a, b, random_matrix(rng, n, m)};
}

// One eigenvalue sum vanishes; C is built from a random X so the data stay consistent.
SylvesterProblem random_singular_problem(std::mt19937_64& rng, int n) {
  Matrix ta = Matrix::Zero(n, n), tb = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    ta(i, i) = 2.0 + i;
    tb(i, i) = 1.0 + i;
    for (int j = i + 1; j < n; ++j) {
      ta(i, j) = 0.3 * random_matrix(rng, 1, 1)(0);
      tb(i, j) = 0.3 * random_matrix(rng, 1, 1)(0);
    }
  }
  tb(0, 0) = -ta(0, 0);
  const Matrix q1 = random_matrix(rng, n, n).householderQr().householderQ();
  const Matrix q2 = random_matrix(rng, n, n).householderQr().householderQ();
  const Matrix a = q1 * ta * q1.transpose();
  const Matrix b = q2 * tb * q2.transpose();
  const Matrix x0 = random_matrix(rng, n, n);
  return {a, b, a * x0 + x0 * b};
}

class RandomInstances : public ::testing::TestWithParam<int> {};

TEST_P(RandomInstances, EveryPlainPartitionSharesTheSolution) {
  std::mt19937_64 rng(500 + GetParam());
  const SylvesterProblem p = random_problem(rng, 3, 3);
  const Matrix xs = direct_solve(p).X_star;
  EXPECT_LE((p.A() * xs + xs * p.B() - p.C()).norm(), 1e-10);
  for (auto scheme : {PartitionScheme::kBcColumn, PartitionScheme::kAcRow, PartitionScheme::kHighRes}) {
    const Partition part = make_partition(p, scheme);
    const Vector y = vec(part.transposed ? Matrix(xs.transpose()) : xs);
    for (const auto& e : part.nodes) EXPECT_LE((e.H * y - e.c).norm(), 1e-10);
    const Matrix h = stack_operators(part.nodes);
    const Vector c = stack_rhs(part.nodes);
    EXPECT_LE((pinv(h) * c - y).norm(), 1e-9 * (1.0 + y.norm()));
  }
}

TEST_P(RandomInstances, RectangularOperatorMatchesDefinition) {
  std::mt19937_64 rng(600 + GetParam());
  const SylvesterProblem p = random_problem(rng, 2 + GetParam() % 3, 1 + GetParam() % 4);
  const Matrix x = random_matrix(rng, p.n(), p.m());
  EXPECT_LE((sylvester_operator(p) * vec(x) - vec(p.A() * x + x * p.B())).norm(), 1e-12);
}

TEST_P(RandomInstances, RateIsBoundedByTheLimitAndIncreasing) {
  std::mt19937_64 rng(700 + GetParam());
  const SylvesterProblem p = random_problem(rng, 3, 3);
  const auto eqs = bc_column_partition(p);
  const Matrix l = make_path(3).laplacian();
  const double r0 = r0_limit(eqs);
  double prev = 0.0;
  for (double K : {0.3, 3.0, 30.0}) {
    const SpectralRate r = r_of_K(eqs, l, K);
    EXPECT_GT(r.rate, prev);
    EXPECT_LE(r.rate, r0 * (1.0 + 1e-9));
    EXPECT_EQ(rank_identity_check(eqs, l, K), std::optional<bool>(true));
    prev = r.rate;
  }
}

TEST_P(RandomInstances, SingularConsistentFlowReachesTheProjectedAverage) {
  std::mt19937_64 rng(800 + GetParam());
  const SylvesterProblem p = random_singular_problem(rng, 3);
  ASSERT_EQ(consistency_check(p).solvability, SolvabilityCase::kInfinite);
  const auto eqs = bc_column_partition(p);
  const Graph g = make_complete(3);
  SimulationSetup s{FlowKind::kConsensusProjection, p, make_partition(p, PartitionScheme::kBcColumn), g, {}, 5.0,
                    0.0, {}, {}};
  s.init.kind = InitSettings::Kind::kRandom;
  s.init.seed = 900 + GetParam();
  const double r = r_of_K(eqs, g.laplacian(), 5.0).rate;
  s.integrator.t_end = std::min(5000.0, 16.0 / r);
  s.integrator.sample_stride = 1000;
  const Trajectory tr = simulate(s);
  const Vector lim = flow_limit(eqs, prepare(s).initial);
  for (int i = 0; i < 3; ++i) EXPECT_LE((tr.final_state.node(i) - lim).norm(), 1e-5 * (1.0 + lim.norm()));
  EXPECT_LE((sylvester_operator(p) * lim - vec(p.C())).norm(), 1e-8);
}

TEST_P(RandomInstances, ProjectionFlowNeverIncreasesDistanceToTheSolution) {
  std::mt19937_64 rng(1000 + GetParam());
  const SylvesterProblem p = random_problem(rng, 2, 3);
  SimulationSetup s{FlowKind::kConsensusProjection, p, make_partition(p, PartitionScheme::kBcColumn), make_cycle(3),
                    {}, 2.0, 0.0, {}, {}};
  s.init.kind = InitSettings::Kind::kRandom;
  s.init.seed = GetParam();
  s.integrator.t_end = 30.0;
  s.integrator.sample_stride = 10;
  const Trajectory tr = simulate(s);
  for (std::size_t k = 1; k < tr.samples.size(); ++k) {
    EXPECT_LE(tr.samples[k].e_total, tr.samples[k - 1].e_total * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_P(RandomInstances, LaplacianSpectrumProperties) {
  std::mt19937_64 rng(1100 + GetParam());
  const int n = 3 + GetParam() % 5;
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(1, i);
    edges.push_back({pick(rng), i + 1});
  }
  const Graph g = Graph::from_edges(n, edges);
  const Matrix l = g.laplacian();
  EXPECT_LE((l * Vector::Ones(n)).norm(), 1e-14);
  const Vector eig = sym_eig_desc(l);
  EXPECT_NEAR(eig(n - 1), 0.0, 1e-12);
  EXPECT_GT(eig(n - 2), 1e-10);
  EXPECT_NEAR(laplacian_spectrum(g).largest, eig(0), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomInstances, ::testing::Range(0, 8));

}  // namespace
}  // namespace sylflow
