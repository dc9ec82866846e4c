#include <gtest/gtest.h>

#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"
#include "sylflow/oracle.hpp"
#include "sylflow/simulate.hpp"
#include "test_support.hpp"

namespace sylflow {
namespace {

SimulationSetup make(const SylvesterProblem& p, PartitionScheme scheme, FlowKind flow, Graph g,
                     double t_end = 10.0, int stride = 100) {
  const Graph* gp = scheme == PartitionScheme::kFullRowColumn ? &g : nullptr;
  SimulationSetup s{flow, p, make_partition(p, scheme, {}, gp), g, {}, 1.0, 0.0, {}, {}};
  s.integrator.t_end = t_end;
  s.integrator.sample_stride = stride;
  return s;
}

SylvesterProblem unsolvable_2x2() {
  Matrix a(2, 2), b(2, 2), c(2, 2);
  a << 1, 0, 0, 2;
  b << -1, 0, 0, 3;
  c << 1, 0, 0, 1;
  return {a, b, c};
}

TEST(Simulate, StartingAtTheSolutionStaysThere) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5));
  const Vector xs = vec(direct_solve(p).X_star);
  Vector init(125);
  for (int i = 0; i < 5; ++i) init.segment(25 * i, 25) = xs;
  s.init.explicit_x = init;
  const Trajectory traj = simulate(s);
  for (const auto& smp : traj.samples) {
    EXPECT_LE(smp.e_total, 1e-18);
    EXPECT_LE(smp.consensus_residual, 1e-9);
  }
}

TEST(Simulate, RowCountWithRemainderIncludesFinalState) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5), 1.0, 7);
  s.integrator.dt = 0.01;
  const Trajectory traj = simulate(s);
  EXPECT_EQ(traj.steps, 100);
  ASSERT_EQ(traj.samples.size(), 16u);
  EXPECT_DOUBLE_EQ(traj.samples.front().t, 0.0);
  EXPECT_NEAR(traj.samples.back().t, 1.0, 1e-12);
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    EXPECT_GT(traj.samples[k].t, traj.samples[k - 1].t);
  }
}

TEST(Simulate, RowCountWhenStrideDividesSteps) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5), 1.0, 10);
  s.integrator.dt = 0.01;
  EXPECT_EQ(simulate(s).samples.size(), 11u);
}

TEST(Simulate, ShortenedLastStepEndsExactlyAtTEnd) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5), 0.105, 1000);
  s.integrator.dt = 0.01;
  const Trajectory traj = simulate(s);
  EXPECT_EQ(traj.steps, 11);
  EXPECT_NEAR(traj.samples.back().t, 0.105, 1e-14);
}

TEST(Simulate, DeterministicForFixedSeed) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5), 2.0, 20);
  s.init.kind = InitSettings::Kind::kRandom;
  s.init.seed = 1234;
  const Trajectory a = simulate(s);
  const Trajectory b = simulate(s);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) EXPECT_EQ(a.samples[k].e_total, b.samples[k].e_total);
  EXPECT_EQ(a.seed, std::optional<std::uint64_t>(1234));
  s.init.seed = 1235;
  EXPECT_NE(simulate(s).samples.front().e_total, a.samples.front().e_total);
}

TEST(Simulate, ErrorDecreasesFromZeroStart) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_complete(5), 50.0, 500);
  s.K = 10.0;
  const Trajectory traj = simulate(s);
  EXPECT_EQ(traj.solvability, SolvabilityCase::kUnique);
  EXPECT_LT(traj.samples.back().e_total, traj.samples.front().e_total);
  EXPECT_EQ(traj.samples.front().node_errors.size(), 5u);
}

TEST(Simulate, UnsolvableProblemNeedsLeastSquaresFlow) {
  const SylvesterProblem p = unsolvable_2x2();
  SimulationSetup cp = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(2));
  EXPECT_THROW(simulate(cp), InapplicableError);
  SimulationSetup ls = make(p, PartitionScheme::kBcColumn, FlowKind::kLeastSquares, make_cycle(2), 20.0);
  const Trajectory traj = simulate(ls);
  EXPECT_EQ(traj.solvability, SolvabilityCase::kNone);
  EXPECT_TRUE(std::isfinite(traj.samples.back().e_total));
}

TEST(Simulate, HugeStepDiverges) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_complete(5), 1000.0, 10);
  s.K = 100.0;
  s.integrator.dt = 1.0;
  EXPECT_THROW(simulate(s), InstabilityError);
}

TEST(Simulate, SelectorMismatchIsRejected) {
  const SylvesterProblem p = fixtures::example1();
  EXPECT_THROW(prepare(make(p, PartitionScheme::kBcColumn, FlowKind::kClustering, make_cycle(5))),
               ContractViolation);
  EXPECT_THROW(prepare(make(p, PartitionScheme::kClustering, FlowKind::kConsensusProjection, make_cycle(5))),
               ContractViolation);
  EXPECT_THROW(prepare(make(p, PartitionScheme::kBcColumn, FlowKind::kAugmented, make_cycle(5))),
               ContractViolation);
  EXPECT_THROW(prepare(make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(4))),
               DimensionError);
}

TEST(Simulate, RowPartitionConvergesToTheSolution) {
  std::mt19937_64 rng(50);
  const Matrix a = testing::random_matrix(rng, 3, 3) + 3.0 * Matrix::Identity(3, 3);
  const Matrix b = testing::random_matrix(rng, 3, 3) + 3.0 * Matrix::Identity(3, 3);
  const SylvesterProblem p(a, b, testing::random_matrix(rng, 3, 3));
  SimulationSetup s = make(p, PartitionScheme::kAcRow, FlowKind::kConsensusProjection, make_complete(3), 400.0, 10000);
  s.K = 10.0;
  const Trajectory traj = simulate(s);
  EXPECT_TRUE(traj.transposed);
  const Matrix xs = direct_solve(p).X_star;
  EXPECT_LE((traj.node_solution(2) - xs).norm(), 1e-6 * xs.norm());
}

TEST(Simulate, AugmentedFlowReachesConsensusOnPath) {
  const SylvesterProblem p = fixtures::example4();
  SimulationSetup s{FlowKind::kAugmented, p, {}, fixtures::example4_graph(), {}, 10.0, 0.0, {}, {}};
  PartitionOptions opts;
  opts.row_blocks = fixtures::example4_row_blocks();
  const Graph g = fixtures::example4_graph();
  s.partition = make_partition(p, PartitionScheme::kFullRowColumn, opts, &g);
  s.integrator.t_end = 100.0;
  s.integrator.sample_stride = 1000;
  const Trajectory traj = simulate(s);
  EXPECT_EQ(traj.x_block, 36);
  EXPECT_LT(traj.samples.back().e_total, traj.samples.front().e_total);
}

TEST(Simulate, LeastSquaresMatchesConsensusProjectionWhenConsistent) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup a = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_cycle(5), 3.0, 30);
  a.init.kind = InitSettings::Kind::kRandom;
  a.init.seed = 7;
  SimulationSetup b = a;
  b.flow = FlowKind::kLeastSquares;
  const Trajectory ta = simulate(a), tb = simulate(b);
  EXPECT_LE((ta.final_state.x - tb.final_state.x).norm(), 1e-9);
}

TEST(Simulate, DefaultStepRule) {
  const SylvesterProblem p = fixtures::example1();
  SimulationSetup s = make(p, PartitionScheme::kBcColumn, FlowKind::kConsensusProjection, make_complete(5));
  s.K = 100.0;
  EXPECT_NEAR(default_step(s), 0.5 / (100.0 * 5.0 + 2.0), 1e-12);
  s.K = 1.0;
  EXPECT_DOUBLE_EQ(default_step(s), 0.01);
}

}  // namespace
}  // namespace sylflow
