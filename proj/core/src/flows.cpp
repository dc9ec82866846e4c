#include "sylflow/flows.hpp"

#include <cmath>
#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

FlowState FlowState::zeros(int node_count, Index node_dim, Index aux_dim) {
  FlowState s;
  s.node_count = node_count;
  s.node_dim = node_dim;
  s.aux_dim = aux_dim;
  s.x = Vector::Zero(node_count * node_dim);
  s.z = Vector::Zero(node_count * aux_dim);
  return s;
}

FlowState FlowState::replicated(int node_count, const Vector& value, Index aux_dim) {
  FlowState s = zeros(node_count, value.size(), aux_dim);
  for (int i = 0; i < node_count; ++i) s.node(i) = value;
  return s;
}

FlowState Flow::evaluate(const FlowState& s) const {
  FlowState out = FlowState::zeros(s.node_count, s.node_dim, s.aux_dim);
  out.t = s.t;
  derivative(s, out);
  return out;
}

void Flow::check_layout(const FlowState& s) const {
  if (s.node_count != node_count() || s.node_dim != node_dim() ||
      s.x.size() != node_count() * node_dim()) {
    throw DimensionError("flow expects " + std::to_string(node_count()) + " nodes of dimension " +
                         std::to_string(node_dim()) + ", state has " +
                         std::to_string(s.node_count) + " x " + std::to_string(s.node_dim));
  }
  if (aux_dim() > 0 && (s.aux_dim != aux_dim() || s.z.size() != node_count() * aux_dim())) {
    throw ContractViolation("flow requires auxiliary states of dimension " +
                            std::to_string(aux_dim()) + " per node");
  }
}

namespace {

// out_i += K sum_{j in N_i} (x_j - x_i) over the whole node state.
void add_consensus(const Graph& g, double K, const FlowState& s, FlowState& out) {
  for (int i = 0; i < g.node_count(); ++i) {
    auto oi = out.node(i);
    const auto xi = s.node(i);
    for (int j : g.neighbors(i + 1)) oi += K * (s.node(j - 1) - xi);
  }
}

Index common_dim(const std::vector<AffineProjector>& projectors) {
  if (projectors.empty()) throw DimensionError("flow needs at least one node");
  const Index d = projectors.front().dim();
  for (const auto& p : projectors) {
    if (p.dim() != d) throw DimensionError("node projectors disagree on dimension");
  }
  return d;
}

void require_node_count(const Graph& g, std::size_t nodes) {
  if (static_cast<std::size_t>(g.node_count()) != nodes) {
    throw DimensionError("graph has " + std::to_string(g.node_count()) + " nodes but " +
                         std::to_string(nodes) + " node equations were given");
  }
}

Index integer_sqrt(Index v) {
  const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v))));
  return r * r == v ? r : -1;
}

}  // namespace

ConsensusProjectionFlow::ConsensusProjectionFlow(double K, Graph graph,
                                                 std::vector<AffineProjector> projectors)
    : K_(K), graph_(std::move(graph)), projectors_(std::move(projectors)) {
  require_node_count(graph_, projectors_.size());
  dim_ = common_dim(projectors_);
}

void ConsensusProjectionFlow::derivative(const FlowState& s, FlowState& out) const {
  check_layout(s);
  for (int i = 0; i < node_count(); ++i) projectors_[i].displacement(s.node(i), out.node(i));
  add_consensus(graph_, K_, s, out);
}

SymmetrizationFlow::SymmetrizationFlow(double K, double Ks, Graph graph,
                                       std::vector<AffineProjector> projectors)
    : ConsensusProjectionFlow(K, std::move(graph), std::move(projectors)), Ks_(Ks) {
  side_ = integer_sqrt(node_dim());
  if (side_ < 0) {
    throw DimensionError("symmetrization needs square-matrix states, node dimension " +
                         std::to_string(node_dim()) + " is not a perfect square");
  }
}

void SymmetrizationFlow::derivative(const FlowState& s, FlowState& out) const {
  ConsensusProjectionFlow::derivative(s, out);
  for (int i = 0; i < node_count(); ++i) {
    const Eigen::Map<const Matrix> xi(s.x.data() + i * node_dim(), side_, side_);
    Eigen::Map<Matrix> oi(out.x.data() + i * node_dim(), side_, side_);
    // Ks ((x + P x) / 2 - x) = Ks / 2 (X^T - X)
    oi += 0.5 * Ks_ * (xi.transpose() - xi);
  }
}

LeastSquaresFlow::LeastSquaresFlow(double K, Graph graph, const std::vector<NodeEquation>& eqs)
    : K_(K), graph_(std::move(graph)) {
  require_node_count(graph_, eqs.size());
  if (eqs.empty()) throw DimensionError("flow needs at least one node");
  dim_ = eqs.front().unknown_dim();
  for (const auto& e : eqs) {
    if (e.unknown_dim() != dim_) throw DimensionError("node equations disagree on dimension");
    h_.push_back(e.H);
    h_pinv_.push_back(pinv(e.H));
    c_.push_back(e.c);
  }
}

void LeastSquaresFlow::derivative(const FlowState& s, FlowState& out) const {
  check_layout(s);
  for (int i = 0; i < node_count(); ++i) {
    out.node(i).noalias() = -h_pinv_[i] * (h_[i] * s.node(i) - c_[i]);
  }
  add_consensus(graph_, K_, s, out);
}

ClusteringFlow::ClusteringFlow(double K, DoubleLayerNetwork network, const ClusterOperators& ops)
    : K_(K), network_(std::move(network)), n_(ops.n) {
  if (network_.cluster_count() != n_) {
    throw DimensionError("clustering flow: network has " +
                         std::to_string(network_.cluster_count()) + " clusters but n = " +
                         std::to_string(n_));
  }
  const Index n = n_;
  for (int i = 0; i < n_; ++i) {
    m_.push_back(ops.M[i]);
    mt_.push_back(ops.M[i].transpose());
    l_.push_back(kron(network_.inner()[i].laplacian(), Matrix::Identity(n, n)));
    rhs_.push_back(ops.C_tilde[i]);
  }
}

void ClusteringFlow::derivative(const FlowState& s, FlowState& out) const {
  check_layout(s);
  const Index block = node_dim();
  Vector residual(block);
  for (int i = 0; i < n_; ++i) {
    const auto xi = s.node(i);
    residual.noalias() = m_[i] * xi;
    residual.noalias() -= l_[i] * s.aux(i);
    residual -= rhs_[i];
    auto dx = out.node(i);
    dx.noalias() = -mt_[i] * residual;
    for (int k : network_.outer().neighbors(i + 1)) dx -= K_ * (xi - s.node(k - 1));
    out.aux(i) = residual;
  }
}

Matrix projection_gram_blocks(const std::vector<AffineProjector>& projectors) {
  const Index d = common_dim(projectors);
  const Index nodes = static_cast<Index>(projectors.size());
  Matrix j = Matrix::Zero(nodes * d, nodes * d);
  for (Index i = 0; i < nodes; ++i) j.block(i * d, i * d, d, d) = projectors[i].gram();
  return j;
}

AffineLinearSystem consensus_projection_system(double K, const Matrix& laplacian,
                                               const std::vector<AffineProjector>& projectors) {
  const Index d = common_dim(projectors);
  const Index nodes = static_cast<Index>(projectors.size());
  if (laplacian.rows() != nodes) throw DimensionError("Laplacian size does not match node count");
  AffineLinearSystem sys;
  sys.system = K * kron(laplacian, Matrix::Identity(d, d)) + projection_gram_blocks(projectors);
  sys.offset.resize(nodes * d);
  for (Index i = 0; i < nodes; ++i) sys.offset.segment(i * d, d) = projectors[i].offset();
  return sys;
}

AffineLinearSystem symmetrization_system(double K, double Ks, const Matrix& laplacian,
                                         const std::vector<AffineProjector>& projectors) {
  AffineLinearSystem sys = consensus_projection_system(K, laplacian, projectors);
  const Index d = projectors.front().dim();
  const Index side = integer_sqrt(d);
  if (side < 0) throw DimensionError("symmetrization needs square-matrix states");
  const Matrix sym = 0.5 * Ks *
                     (Matrix::Identity(d, d) - symmetrizer_permutation(static_cast<int>(side)));
  for (Index i = 0; i < static_cast<Index>(projectors.size()); ++i) {
    sys.system.block(i * d, i * d, d, d) += sym;
  }
  return sys;
}

AffineLinearSystem clustering_system(double K, const Matrix& outer_laplacian,
                                     const std::vector<Matrix>& inner_laplacians,
                                     const ClusterOperators& ops) {
  const Index n = ops.n;
  const Index block = n * n;
  const Index total = n * block;
  if (outer_laplacian.rows() != n || static_cast<Index>(inner_laplacians.size()) != n) {
    throw DimensionError("clustering system: Laplacian sizes do not match n");
  }
  const Matrix m = ops.stacked_M();
  const Vector c = ops.stacked_C();
  Matrix l = Matrix::Zero(total, total);
  for (Index i = 0; i < n; ++i) {
    l.block(i * block, i * block, block, block) =
        kron(inner_laplacians[i], Matrix::Identity(n, n));
  }
  AffineLinearSystem sys;
  sys.system.resize(2 * total, 2 * total);
  sys.system.topLeftCorner(total, total) =
      m.transpose() * m + K * kron(outer_laplacian, Matrix::Identity(block, block));
  sys.system.topRightCorner(total, total) = -m.transpose() * l;
  sys.system.bottomLeftCorner(total, total) = -m;
  sys.system.bottomRightCorner(total, total) = l;
  sys.offset.resize(2 * total);
  sys.offset.head(total) = m.transpose() * c;
  sys.offset.tail(total) = -c;
  return sys;
}

Vector apply_system(const AffineLinearSystem& sys, const FlowState& s) {
  Vector stacked(s.x.size() + s.z.size());
  stacked << s.x, s.z;
  if (stacked.size() != sys.system.cols()) {
    throw DimensionError("apply_system: state length does not match the system");
  }
  return -sys.system * stacked + sys.offset;
}

double consensus_residual(const FlowState& s, Index block) {
  const Index len = block > 0 ? block : s.node_dim;
  double worst = 0.0;
  for (int i = 0; i < s.node_count; ++i) {
    for (int j = i + 1; j < s.node_count; ++j) {
      worst = std::max(worst, (s.node(i).head(len) - s.node(j).head(len)).norm());
    }
  }
  return worst;
}

}  // namespace sylflow
