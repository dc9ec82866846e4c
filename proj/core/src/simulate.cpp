#include "sylflow/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "sylflow/errors.hpp"
#include "sylflow/integrator.hpp"
#include "sylflow/oracle.hpp"

namespace sylflow {

namespace {

constexpr std::array<std::pair<FlowKind, std::string_view>, 5> kFlowNames{{
    {FlowKind::kConsensusProjection, "cp"},
    {FlowKind::kSymmetrization, "cps"},
    {FlowKind::kLeastSquares, "ls"},
    {FlowKind::kAugmented, "augmented"},
    {FlowKind::kClustering, "clustering"},
}};

std::vector<Matrix> inner_laplacians(const std::vector<Graph>& inner) {
  std::vector<Matrix> out;
  for (const auto& g : inner) out.push_back(g.laplacian());
  return out;
}

void check_selectors(const SimulationSetup& s) {
  const bool clustering_scheme = s.partition.scheme == PartitionScheme::kClustering;
  if ((s.flow == FlowKind::kClustering) != clustering_scheme) {
    throw ContractViolation("the clustering flow and the clustering partition go together");
  }
  if (s.flow == FlowKind::kAugmented && s.partition.scheme != PartitionScheme::kFullRowColumn) {
    throw ContractViolation("the augmented flow needs the full-row-column partition");
  }
  if (s.flow == FlowKind::kClustering) {
    if (s.inner.empty()) throw ContractViolation("the clustering flow needs inner graphs");
    if (!s.partition.clusters) throw ContractViolation("partition carries no cluster operators");
  } else if (s.graph.node_count() != s.partition.node_count()) {
    throw DimensionError("graph has " + std::to_string(s.graph.node_count()) +
                         " nodes but the partition has " +
                         std::to_string(s.partition.node_count()));
  }
  if (!(s.K >= 0.0) || !(s.Ks >= 0.0)) throw ContractViolation("gains K and Ks must be >= 0");
  if (!(s.integrator.t_end > 0.0)) throw ContractViolation("t_end must be positive");
  if (s.integrator.sample_stride < 1) throw ContractViolation("sample_stride must be >= 1");
  if (s.integrator.dt && !(*s.integrator.dt > 0.0)) throw ContractViolation("dt must be positive");
}

Vector oriented_vec(const Matrix& x, bool transposed) {
  return transposed ? vec(x.transpose()) : vec(x);
}

FlowState initial_state(const SimulationSetup& s, const Flow& flow) {
  FlowState st = flow.zero_state();
  if (s.init.explicit_x) {
    if (s.init.explicit_x->size() != st.x.size()) {
      throw DimensionError("initial state has length " + std::to_string(s.init.explicit_x->size()) +
                           ", expected " + std::to_string(st.x.size()));
    }
    st.x = *s.init.explicit_x;
  } else if (s.init.kind == InitSettings::Kind::kRandom) {
    std::mt19937_64 rng(s.init.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (Index k = 0; k < st.x.size(); ++k) st.x(k) = dist(rng);
  }
  return st;
}

std::unique_ptr<Flow> build_flow(const SimulationSetup& s) {
  switch (s.flow) {
    case FlowKind::kConsensusProjection:
    case FlowKind::kAugmented:
      return std::make_unique<ConsensusProjectionFlow>(s.K, s.graph,
                                                       build_projectors(s.partition.nodes));
    case FlowKind::kSymmetrization:
      return std::make_unique<SymmetrizationFlow>(s.K, s.Ks, s.graph,
                                                  build_projectors(s.partition.nodes));
    case FlowKind::kLeastSquares:
      return std::make_unique<LeastSquaresFlow>(s.K, s.graph, s.partition.nodes);
    case FlowKind::kClustering:
      return std::make_unique<ClusteringFlow>(s.K, DoubleLayerNetwork(s.graph, s.inner),
                                              *s.partition.clusters);
  }
  throw ContractViolation("unknown flow kind");
}

std::optional<Vector> reference_for(const SimulationSetup& s, SolvabilityCase solvability,
                                    const FlowState& initial) {
  const bool transposed = s.partition.transposed;
  const Index x_dim = s.partition.x_dim();
  if (solvability == SolvabilityCase::kNone) {
    if (s.flow != FlowKind::kLeastSquares) {
      throw InapplicableError("AX + XB = C has no solution; only the least-squares flow (\"ls\") "
                              "applies to this data");
    }
    const Matrix x_ls = unvec(least_squares_reference(s.problem), s.problem.n(), s.problem.m());
    return oriented_vec(x_ls, transposed);
  }
  if (solvability == SolvabilityCase::kUnique || s.flow == FlowKind::kClustering) {
    return oriented_vec(direct_solve(s.problem).X_star, transposed);
  }
  if (s.flow == FlowKind::kSymmetrization) {
    const auto sys = symmetrization_system(s.K, s.Ks, s.graph.laplacian(),
                                           build_projectors(s.partition.nodes));
    const Vector lim = linear_flow_limit(sys, initial.x);
    Vector avg = Vector::Zero(x_dim);
    for (int i = 0; i < initial.node_count; ++i) avg += lim.segment(i * initial.node_dim, x_dim);
    return avg / static_cast<double>(initial.node_count);
  }
  return flow_limit(s.partition.nodes, initial).head(x_dim);
}

long step_count(double t_end, double dt) {
  const double ratio = t_end / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio)) {
    return std::max(1L, static_cast<long>(rounded));
  }
  return static_cast<long>(std::ceil(ratio));
}

Sample take_sample(const FlowState& s, const std::optional<Vector>& reference, Index x_block) {
  Sample out{s.t, 0.0, consensus_residual(s, x_block), {}};
  out.node_errors.reserve(s.node_count);
  for (int i = 0; i < s.node_count; ++i) {
    double e = std::numeric_limits<double>::quiet_NaN();
    if (reference) e = (s.node(i).head(x_block) - *reference).squaredNorm();
    out.node_errors.push_back(e);
  }
  out.e_total = reference ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  if (reference) {
    for (double e : out.node_errors) out.e_total += e;
  }
  return out;
}

}  // namespace

std::optional<FlowKind> parse_flow_kind(std::string_view name) {
  for (auto [kind, label] : kFlowNames) {
    if (label == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(FlowKind kind) {
  for (auto [k, label] : kFlowNames) {
    if (k == kind) return label;
  }
  return "?";
}

Matrix Trajectory::node_solution(int i) const {
  const Matrix x = unvec(final_state.node(i).head(x_block), x_rows, x_cols);
  return transposed ? Matrix(x.transpose()) : x;
}

double default_step(const SimulationSetup& s) {
  if (s.flow == FlowKind::kClustering) {
    const auto sys = clustering_system(s.K, s.graph.laplacian(), inner_laplacians(s.inner),
                                       *s.partition.clusters);
    const double rho = Eigen::EigenSolver<Matrix>(sys.system, false).eigenvalues().cwiseAbs().maxCoeff();
    return rho > 0.0 ? std::min(0.01, 2.0 / rho) : 0.01;
  }
  const double lambda1 = laplacian_spectrum(s.graph).largest;
  const double ks = s.flow == FlowKind::kSymmetrization ? s.Ks : 0.0;
  return std::min(0.01, 0.5 / (s.K * lambda1 + 2.0 + ks));
}

PreparedRun prepare(const SimulationSetup& s) {
  check_selectors(s);
  PreparedRun run;
  run.flow = build_flow(s);
  run.initial = initial_state(s, *run.flow);
  run.solvability = consistency_check(s.problem).solvability;
  run.reference = reference_for(s, run.solvability, run.initial);
  run.dt = s.integrator.dt ? *s.integrator.dt : default_step(s);
  run.x_block = s.partition.x_dim();
  return run;
}

Trajectory simulate(const SimulationSetup& setup) {
  PreparedRun run = prepare(setup);
  const double t_end = setup.integrator.t_end;
  const long steps = step_count(t_end, run.dt);
  const long stride = setup.integrator.sample_stride;

  Trajectory traj;
  traj.reference = run.reference;
  traj.solvability = run.solvability;
  traj.dt = run.dt;
  traj.steps = steps;
  if (!setup.init.explicit_x && setup.init.kind == InitSettings::Kind::kRandom) {
    traj.seed = setup.init.seed;
  }
  traj.x_block = run.x_block;
  traj.x_rows = setup.partition.x_rows;
  traj.x_cols = setup.partition.x_cols;
  traj.transposed = setup.partition.transposed;

  FlowState s = std::move(run.initial);
  s.t = 0.0;
  traj.samples.reserve(static_cast<std::size_t>(steps / stride + 2));
  traj.samples.push_back(take_sample(s, run.reference, run.x_block));

  Rk4Integrator rk4(*run.flow);
  for (long k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? t_end : static_cast<double>(k) * run.dt;
    rk4.step(s, t_next - s.t);
    s.t = t_next;
    const double norm = std::sqrt(s.x.squaredNorm() + s.z.squaredNorm());
    if (!(norm <= kDivergenceThreshold)) {
      throw InstabilityError("state norm " + std::to_string(norm) + " exceeded " +
                             std::to_string(kDivergenceThreshold) + " at t = " +
                             std::to_string(s.t) + "; try a smaller dt (current " +
                             std::to_string(run.dt) + ")");
    }
    if (k % stride == 0 || k == steps) traj.samples.push_back(take_sample(s, run.reference, run.x_block));
  }
  traj.final_state = std::move(s);
  return traj;
}

}  // namespace sylflow
