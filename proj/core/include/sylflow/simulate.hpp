#pragma once

// Driving a flow over a partitioned problem: setup, fixed-step integration,
// sampling and error metrics.

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "sylflow/flows.hpp"
#include "sylflow/graph.hpp"
#include "sylflow/partition.hpp"

namespace sylflow {

enum class FlowKind {
  kConsensusProjection,  // "cp"
  kSymmetrization,       // "cps"
  kLeastSquares,         // "ls"
  kAugmented,            // "augmented": consensus + projection on the full row/column scheme
  kClustering,           // "clustering"
};

std::optional<FlowKind> parse_flow_kind(std::string_view name);
std::string_view to_string(FlowKind kind);

struct IntegratorSettings {
  std::optional<double> dt;  // default chosen from the flow's stiffness
  double t_end = 200.0;
  int sample_stride = 100;
};

struct InitSettings {
  enum class Kind { kZero, kRandom };
  Kind kind = Kind::kZero;
  std::uint64_t seed = 0;
  /// Overrides `kind`: explicit stacked node states (length N * node_dim).
  std::optional<Vector> explicit_x;
};

struct SimulationSetup {
  FlowKind flow;
  SylvesterProblem problem;
  Partition partition;
  Graph graph;               // communication graph, or the outer graph for clustering
  std::vector<Graph> inner;  // clustering only
  double K = 1.0;
  double Ks = 0.0;           // symmetrization only
  IntegratorSettings integrator;
  InitSettings init;
};

struct Sample {
  double t;
  double e_total;  // sum_i ||X_i(t) - X_ref||_F^2; NaN without a reference
  double consensus_residual;
  std::vector<double> node_errors;
};

struct Trajectory {
  std::vector<Sample> samples;
  FlowState final_state;
  std::optional<Vector> reference;  // X-block reference in node coordinates
  SolvabilityCase solvability;
  double dt = 0.0;
  long steps = 0;
  std::optional<std::uint64_t> seed;  // set for random initialization
  Index x_block = 0;                  // leading entries of a node state holding X
  Index x_rows = 0;
  Index x_cols = 0;
  bool transposed = false;

  /// Node i's (0-based) estimate of X in the problem's orientation.
  Matrix node_solution(int i) const;
};

/// A flow built from a setup, with its starting state and error reference.
struct PreparedRun {
  std::unique_ptr<Flow> flow;
  FlowState initial;
  std::optional<Vector> reference;
  SolvabilityCase solvability;
  double dt;
  Index x_block;
};

/// Default step: min(0.01, 0.5 / (K lambda_1(L) + 2 + Ks)) for the plain flows;
/// min(0.01, 2 / rho(G)) for the clustering flow, inside the RK4 stability
/// interval on the negative real axis.
double default_step(const SimulationSetup& setup);

/// Builds the flow and reference. Throws InapplicableError for unsolvable
/// problems under any flow except least squares, ContractViolation for
/// mismatched selectors.
PreparedRun prepare(const SimulationSetup& setup);

inline constexpr double kDivergenceThreshold = 1e12;

/// Integrates with fixed-step RK4. Samples every `sample_stride` steps plus
/// the final state. Throws InstabilityError once ||state|| exceeds
/// kDivergenceThreshold and NumericError on non-finite derivatives.
Trajectory simulate(const SimulationSetup& setup);

}  // namespace sylflow
