#include <random>

#include <benchmark/benchmark.h>

#include "sylflow/fixtures.hpp"
#include "sylflow/integrator.hpp"
#include "sylflow/rates.hpp"

namespace {

using namespace sylflow;

void BM_Rk4StepExample1(benchmark::State& state) {
  const SylvesterProblem p = fixtures::example1();
  const ConsensusProjectionFlow flow(10.0, make_cycle(5), build_projectors(bc_column_partition(p)));
  Rk4Integrator integ(flow);
  FlowState s = flow.zero_state();
  for (auto _ : state) {
    integ.step(s, 0.01);
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_Rk4StepExample1);

void BM_ClusteringStepExample1(benchmark::State& state) {
  const SylvesterProblem p = fixtures::example1();
  const ClusteringFlow flow(10.0, DoubleLayerNetwork(make_complete(5), std::vector<Graph>(5, make_cycle(5))),
                            clustering_partition(p));
  Rk4Integrator integ(flow);
  FlowState s = flow.zero_state();
  for (auto _ : state) {
    integ.step(s, 0.001);
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_ClusteringStepExample1);

void BM_Pinv(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(pinv(m));
}
BENCHMARK(BM_Pinv)->Arg(25)->Arg(125);

void BM_RateOfK(benchmark::State& state) {
  const auto eqs = bc_column_partition(fixtures::example1());
  const Matrix l = make_cycle(5).laplacian();
  for (auto _ : state) benchmark::DoNotOptimize(r_of_K(eqs, l, 10.0));
}
BENCHMARK(BM_RateOfK);

}  // namespace
BENCHMARK_MAIN();
