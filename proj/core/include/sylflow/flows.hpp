#pragma once

// Right-hand sides of the network flows. Every flow acts on a FlowState that
// stacks the node states col{x_1, ..., x_N} (and, for the clustering flow, the
// auxiliary states col{z_1, ..., z_N}).

#include <vector>

#include "sylflow/graph.hpp"
#include "sylflow/linalg.hpp"
#include "sylflow/partition.hpp"
#include "sylflow/projector.hpp"

namespace sylflow {

struct FlowState {
  double t = 0.0;
  int node_count = 0;
  Index node_dim = 0;
  Index aux_dim = 0;  // per node; 0 when there are no auxiliary states
  Vector x;           // length node_count * node_dim
  Vector z;           // length node_count * aux_dim

  static FlowState zeros(int node_count, Index node_dim, Index aux_dim = 0);
  /// Every node starts at `value`.
  static FlowState replicated(int node_count, const Vector& value, Index aux_dim = 0);

  /// 0-based node accessors.
  auto node(int i) { return x.segment(static_cast<Index>(i) * node_dim, node_dim); }
  auto node(int i) const { return x.segment(static_cast<Index>(i) * node_dim, node_dim); }
  auto aux(int i) { return z.segment(static_cast<Index>(i) * aux_dim, aux_dim); }
  auto aux(int i) const { return z.segment(static_cast<Index>(i) * aux_dim, aux_dim); }

  bool has_aux() const { return aux_dim > 0; }
  bool all_finite() const { return x.allFinite() && z.allFinite(); }
};

/// Interface of an autonomous flow d/dt s = f(s).
class Flow {
 public:
  virtual ~Flow() = default;
  virtual int node_count() const = 0;
  virtual Index node_dim() const = 0;
  virtual Index aux_dim() const { return 0; }
  /// Writes f(s) into `out`, which already has the layout of `s`.
  virtual void derivative(const FlowState& s, FlowState& out) const = 0;

  FlowState evaluate(const FlowState& s) const;
  FlowState zero_state() const { return FlowState::zeros(node_count(), node_dim(), aux_dim()); }

 protected:
  void check_layout(const FlowState& s) const;
};

/// dx_i/dt = K sum_{j in N_i} (x_j - x_i) + proj_i(x_i) - x_i.
class ConsensusProjectionFlow : public Flow {
 public:
  ConsensusProjectionFlow(double K, Graph graph, std::vector<AffineProjector> projectors);

  int node_count() const override { return graph_.node_count(); }
  Index node_dim() const override { return dim_; }
  void derivative(const FlowState& s, FlowState& out) const override;

  double K() const { return K_; }
  const Graph& graph() const { return graph_; }
  const std::vector<AffineProjector>& projectors() const { return projectors_; }

 private:
  double K_;
  Graph graph_;
  std::vector<AffineProjector> projectors_;
  Index dim_;
};

/// Consensus + projection plus Ks (P_S(x_i) - x_i), where P_S(y) = (y + P y) / 2
/// projects vec(Y) onto vec of symmetric matrices. Node dimension must be a
/// perfect square.
class SymmetrizationFlow : public ConsensusProjectionFlow {
 public:
  SymmetrizationFlow(double K, double Ks, Graph graph, std::vector<AffineProjector> projectors);

  void derivative(const FlowState& s, FlowState& out) const override;
  double Ks() const { return Ks_; }

 private:
  double Ks_;
  Index side_;
};

/// dx_i/dt = K sum_{j in N_i} (x_j - x_i) - H_i^+ (H_i x_i - c_i).
class LeastSquaresFlow : public Flow {
 public:
  LeastSquaresFlow(double K, Graph graph, const std::vector<NodeEquation>& eqs);

  int node_count() const override { return graph_.node_count(); }
  Index node_dim() const override { return dim_; }
  void derivative(const FlowState& s, FlowState& out) const override;

 private:
  double K_;
  Graph graph_;
  std::vector<Matrix> h_;
  std::vector<Matrix> h_pinv_;
  std::vector<Vector> c_;
  Index dim_;
};

/// Local conservation + global consensus flow over a double-layer network.
/// Node j of cluster i holds x_ij, z_ij in R^n and the block
/// W_ij = 1_{j=i} A + B_ji I_n; with r_ij = W_ij x_ij - C_ji e_j - sum_{k in N_ij}(z_ij - z_ik):
///   dx_ij/dt = -W_ij^T r_ij - K sum_{k in N_i} (x_ij - x_kj),   dz_ij/dt = r_ij.
/// Cluster i's node state is col{x_i1, ..., x_in}.
class ClusteringFlow : public Flow {
 public:
  ClusteringFlow(double K, DoubleLayerNetwork network, const ClusterOperators& ops);

  int node_count() const override { return network_.cluster_count(); }
  Index node_dim() const override { return static_cast<Index>(n_) * n_; }
  Index aux_dim() const override { return static_cast<Index>(n_) * n_; }
  void derivative(const FlowState& s, FlowState& out) const override;

  const DoubleLayerNetwork& network() const { return network_; }

 private:
  double K_;
  DoubleLayerNetwork network_;
  int n_;
  std::vector<Matrix> m_;   // M_i
  std::vector<Matrix> mt_;  // M_i^T
  std::vector<Matrix> l_;   // L_Gi (x) I_n
  std::vector<Vector> rhs_; // C~_i
};

/// d/dt s = -system * s + offset, the stacked form of a linear flow.
struct AffineLinearSystem {
  Matrix system;
  Vector offset;
};

/// J = diag{H_i^+ H_i}.
Matrix projection_gram_blocks(const std::vector<AffineProjector>& projectors);

/// -(K L (x) I_d + J) x + Q_C with Q_C = col{H_i^+ c_i}.
AffineLinearSystem consensus_projection_system(double K, const Matrix& laplacian,
                                               const std::vector<AffineProjector>& projectors);

/// As above with J_p = diag{H_i^+ H_i + Ks/2 (I - P)}.
AffineLinearSystem symmetrization_system(double K, double Ks, const Matrix& laplacian,
                                         const std::vector<AffineProjector>& projectors);

/// Stacked clustering flow on s = col{x, z}:
///   G = [[M^T M + K (L_G (x) I), -M^T L], [-M, L]],  offset = col{M^T C, -C}
/// with M = diag{M_i}, L = diag{L_Gi (x) I_n}, C = col{C~_i}.
AffineLinearSystem clustering_system(double K, const Matrix& outer_laplacian,
                                     const std::vector<Matrix>& inner_laplacians,
                                     const ClusterOperators& ops);

/// Applies an AffineLinearSystem to a stacked state col{x, z}.
Vector apply_system(const AffineLinearSystem& sys, const FlowState& s);

/// max_{i,j} ||x_i - x_j|| over the first `block` entries of each node state
/// (pass the X-block size for augmented states; 0 means the whole state).
double consensus_residual(const FlowState& s, Index block = 0);

}  // namespace sylflow
