#include "sylflow/partition.hpp"

#include <algorithm>
#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square_problem(const SylvesterProblem& p, const char* who) {
  if (!p.is_square()) {
    throw DimensionError(std::string(who) + " requires a square problem (n = m), got n = " +
                         std::to_string(p.n()) + ", m = " + std::to_string(p.m()));
  }
}

// Row l (0-based) of A placed in the k-th (0-based) block of a 1 x n^2 row.
Matrix high_res_row(const Matrix& a, const Matrix& b, Index k, Index l) {
  const Index n = a.rows();
  Matrix row = Matrix::Zero(1, n * n);
  row.block(0, k * n, 1, n) = a.row(l);
  // e_l^T (B_k^T (x) I_n): entry j*n + l carries B(j, k).
  for (Index j = 0; j < n; ++j) row(0, j * n + l) += b(j, k);
  return row;
}

}  // namespace

SylvesterProblem::SylvesterProblem(Matrix a, Matrix b, Matrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw DimensionError("A must be square and nonempty, got " + shape(a_));
  }
  if (b_.rows() != b_.cols() || b_.rows() == 0) {
    throw DimensionError("B must be square and nonempty, got " + shape(b_));
  }
  if (c_.rows() != a_.rows() || c_.cols() != b_.rows()) {
    throw DimensionError("C must be " + std::to_string(a_.rows()) + "x" +
                         std::to_string(b_.rows()) + ", got " + shape(c_));
  }
  if (!a_.allFinite() || !b_.allFinite() || !c_.allFinite()) {
    throw NumericError("problem data contains non-finite entries");
  }
}

SylvesterProblem SylvesterProblem::transposed() const {
  return SylvesterProblem(b_.transpose(), a_.transpose(), c_.transpose());
}

SylvesterProblem SylvesterProblem::lyapunov(const Matrix& a, const Matrix& c) {
  return SylvesterProblem(a, a.transpose(), c);
}

Matrix sylvester_operator(const SylvesterProblem& p) {
  return kron(Matrix::Identity(p.m(), p.m()), p.A()) +
         kron(p.B().transpose(), Matrix::Identity(p.n(), p.n()));
}

Matrix stack_operators(const std::vector<NodeEquation>& eqs) {
  if (eqs.empty()) return {};
  Index rows = 0;
  const Index d = eqs.front().unknown_dim();
  for (const auto& e : eqs) {
    if (e.unknown_dim() != d) throw DimensionError("node equations disagree on unknown dimension");
    rows += e.row_count();
  }
  Matrix h(rows, d);
  Index r = 0;
  for (const auto& e : eqs) {
    h.middleRows(r, e.row_count()) = e.H;
    r += e.row_count();
  }
  return h;
}

Vector stack_rhs(const std::vector<NodeEquation>& eqs) {
  Index rows = 0;
  for (const auto& e : eqs) rows += e.c.size();
  Vector c(rows);
  Index r = 0;
  for (const auto& e : eqs) {
    c.segment(r, e.c.size()) = e.c;
    r += e.c.size();
  }
  return c;
}

Matrix ClusterOperators::stacked_M() const {
  const Index block = static_cast<Index>(n) * n;
  Matrix out = Matrix::Zero(block * n, block * n);
  for (int i = 0; i < n; ++i) out.block(i * block, i * block, block, block) = M[i];
  return out;
}

Vector ClusterOperators::stacked_C() const {
  const Index block = static_cast<Index>(n) * n;
  Vector out(block * n);
  for (int i = 0; i < n; ++i) out.segment(i * block, block) = C_tilde[i];
  return out;
}

std::vector<NodeEquation> bc_column_partition(const SylvesterProblem& p) {
  const Index n = p.n();
  const Index m = p.m();
  const Matrix identity = Matrix::Identity(n, n);
  std::vector<NodeEquation> eqs;
  eqs.reserve(m);
  for (Index i = 0; i < m; ++i) {
    NodeEquation e;
    e.node_id = static_cast<int>(i + 1);
    // [A_0]_i + B_i^T (x) I_n
    e.H = kron(p.B().col(i).transpose(), identity);
    e.H.block(0, i * n, n, n) += p.A();
    e.c = p.C().col(i);
    eqs.push_back(std::move(e));
  }
  return eqs;
}

std::vector<NodeEquation> ac_row_partition(const SylvesterProblem& p) {
  return bc_column_partition(p.transposed());
}

std::vector<NodeEquation> grouped_column_partition(const SylvesterProblem& p,
                                                   const std::vector<std::vector<int>>& groups) {
  const Index m = p.m();
  if (groups.empty()) throw PartitionError("grouped partition needs at least one group");
  std::vector<bool> covered(m, false);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw PartitionError("group " + std::to_string(g + 1) + " is empty");
    for (int col : groups[g]) {
      if (col < 1 || col > m) {
        throw PartitionError("group " + std::to_string(g + 1) + " references column " +
                             std::to_string(col) + " outside 1.." + std::to_string(m));
      }
      covered[col - 1] = true;
    }
  }
  for (Index k = 0; k < m; ++k) {
    if (!covered[k]) throw PartitionError("column " + std::to_string(k + 1) + " is not covered");
  }

  const auto columns = bc_column_partition(p);
  std::vector<NodeEquation> eqs;
  eqs.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<NodeEquation> members;
    for (int col : groups[g]) members.push_back(columns[col - 1]);
    NodeEquation e;
    e.node_id = static_cast<int>(g + 1);
    e.H = stack_operators(members);
    e.c = stack_rhs(members);
    eqs.push_back(std::move(e));
  }
  return eqs;
}

std::vector<NodeEquation> high_res_partition(const SylvesterProblem& p) {
  require_square_problem(p, "high_res_partition");
  const Index n = p.n();
  std::vector<NodeEquation> eqs;
  eqs.reserve(n * n);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      NodeEquation e;
      e.node_id = static_cast<int>(k * n + l + 1);
      e.H = high_res_row(p.A(), p.B(), k, l);
      e.c = Vector::Constant(1, p.C()(l, k));
      eqs.push_back(std::move(e));
    }
  }
  return eqs;
}

std::vector<NodeEquation> lyapunov_sym_partition(const Matrix& a, const Matrix& c) {
  if (a.rows() != a.cols() || c.rows() != a.rows() || c.cols() != a.cols()) {
    throw DimensionError("lyapunov_sym_partition: A and C must be square and the same size");
  }
  if ((c - c.transpose()).norm() > 1e-9 * (1.0 + c.norm())) {
    throw ContractViolation("lyapunov_sym_partition: C must be symmetric");
  }
  const Index n = a.rows();
  const Matrix b = a.transpose();
  std::vector<NodeEquation> eqs;
  eqs.reserve(n * (n + 1) / 2);
  for (Index k = 0; k < n; ++k) {
    for (Index l = k; l < n; ++l) {
      NodeEquation e;
      // g(k,l) with 1-based k, l.
      e.node_id = static_cast<int>(k * n + (l + 1) - k * (k + 1) / 2);
      e.H.resize(2, n * n);
      e.H.row(0) = high_res_row(a, b, k, l);
      e.H.row(1) = high_res_row(a, b, l, k);
      e.c = Vector(2);
      e.c << c(l, k), c(k, l);
      eqs.push_back(std::move(e));
    }
  }
  return eqs;
}

std::vector<NodeEquation> full_rowcol_partition(const SylvesterProblem& p, const Graph& g) {
  require_square_problem(p, "full_rowcol_partition");
  if (g.node_count() != p.n()) {
    throw DimensionError("full_rowcol_partition: graph has " + std::to_string(g.node_count()) +
                         " nodes but the problem has n = " + std::to_string(p.n()) +
                         "; pass explicit row blocks");
  }
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= g.node_count(); ++i) blocks.push_back({i});
  return full_rowcol_partition(p, g, blocks);
}

std::vector<NodeEquation> full_rowcol_partition(const SylvesterProblem& p, const Graph& g,
                                                const std::vector<std::vector<int>>& row_blocks) {
  require_square_problem(p, "full_rowcol_partition");
  const Index n = p.n();
  const Index nodes = g.node_count();
  if (static_cast<Index>(row_blocks.size()) != nodes) {
    throw DimensionError("full_rowcol_partition: " + std::to_string(row_blocks.size()) +
                         " row blocks for a " + std::to_string(nodes) + "-node graph");
  }
  std::vector<int> owner(n, 0);
  for (std::size_t b = 0; b < row_blocks.size(); ++b) {
    if (row_blocks[b].empty()) {
      throw PartitionError("row block " + std::to_string(b + 1) + " is empty");
    }
    for (int row : row_blocks[b]) {
      if (row < 1 || row > n) {
        throw PartitionError("row block " + std::to_string(b + 1) + " references row " +
                             std::to_string(row) + " outside 1.." + std::to_string(n));
      }
      if (owner[row - 1] != 0) {
        throw PartitionError("row " + std::to_string(row) + " assigned to more than one node");
      }
      owner[row - 1] = static_cast<int>(b + 1);
    }
  }
  for (Index r = 0; r < n; ++r) {
    if (owner[r] == 0) throw PartitionError("row " + std::to_string(r + 1) + " is not assigned");
  }

  const Matrix laplacian = g.laplacian();
  const Matrix identity = Matrix::Identity(n, n);
  const Index x_dim = n * n;
  const Index z_dim = nodes * n * n;

  std::vector<NodeEquation> eqs;
  eqs.reserve(nodes);
  for (Index i = 0; i < nodes; ++i) {
    Matrix selector = Matrix::Zero(n, n);
    for (int row : row_blocks[i]) selector(row - 1, row - 1) = 1.0;

    NodeEquation e;
    e.node_id = static_cast<int>(i + 1);
    e.H = Matrix::Zero(x_dim, x_dim + z_dim);
    // vec(E_i A X + X B E_i) = (I (x) E_i A + (B E_i)^T (x) I) vec(X)
    e.H.leftCols(x_dim) = kron(identity, selector * p.A()) +
                          kron((p.B() * selector).transpose(), identity);
    // vec(((L)_i (x) I_n) Z) = (I_n (x) ((L)_i (x) I_n)) vec(Z)
    e.H.rightCols(z_dim) = -kron(identity, kron(laplacian.row(i), identity));
    e.c = vec(p.C() * selector);
    eqs.push_back(std::move(e));
  }
  return eqs;
}

ClusterOperators clustering_partition(const SylvesterProblem& p) {
  require_square_problem(p, "clustering_partition");
  const Index n = p.n();
  const Matrix identity = Matrix::Identity(n, n);
  ClusterOperators ops;
  ops.n = static_cast<int>(n);
  for (Index i = 0; i < n; ++i) {
    Matrix mi = Matrix::Zero(n * n, n * n);
    Vector ci = Vector::Zero(n * n);
    for (Index j = 0; j < n; ++j) {
      Matrix block = p.B()(j, i) * identity;
      if (j == i) block += p.A();
      mi.block(j * n, j * n, n, n) = block;
      ci(j * n + j) = p.C()(j, i);
    }
    ops.M.push_back(std::move(mi));
    ops.C_tilde.push_back(std::move(ci));
  }
  return ops;
}

std::string_view to_string(SolvabilityCase c) {
  switch (c) {
    case SolvabilityCase::kUnique:
      return "I";
    case SolvabilityCase::kInfinite:
      return "II";
    case SolvabilityCase::kNone:
      return "III";
  }
  return "?";
}

ConsistencyReport consistency_check(const SylvesterProblem& p) {
  const Matrix h = sylvester_operator(p);
  const Vector c = vec(p.C());
  const int rank = numerical_rank(h);
  const double residual = (h * (pinv(h) * c) - c).norm();
  SolvabilityCase solvability = SolvabilityCase::kNone;
  if (rank == h.cols()) {
    solvability = SolvabilityCase::kUnique;
  } else if (residual <= kConsistencyTol * (1.0 + c.norm())) {
    solvability = SolvabilityCase::kInfinite;
  }
  return {solvability, rank, residual};
}

namespace {

constexpr std::pair<PartitionScheme, std::string_view> kSchemeNames[] = {
    {PartitionScheme::kBcColumn, "bc-column"},
    {PartitionScheme::kAcRow, "ac-row"},
    {PartitionScheme::kGrouped, "grouped"},
    {PartitionScheme::kHighRes, "high-res"},
    {PartitionScheme::kLyapunovSym, "lyapunov-sym"},
    {PartitionScheme::kFullRowColumn, "full-row-column"},
    {PartitionScheme::kClustering, "clustering"},
};

}  // namespace

std::optional<PartitionScheme> parse_partition_scheme(std::string_view name) {
  for (auto [scheme, label] : kSchemeNames) {
    if (label == name) return scheme;
  }
  return std::nullopt;
}

std::string_view to_string(PartitionScheme scheme) {
  for (auto [s, label] : kSchemeNames) {
    if (s == scheme) return label;
  }
  return "?";
}

Index Partition::node_dim() const {
  if (clusters) return static_cast<Index>(clusters->n) * clusters->n;
  return nodes.empty() ? 0 : nodes.front().unknown_dim();
}

int Partition::node_count() const {
  if (clusters) return clusters->n;
  return static_cast<int>(nodes.size());
}

Partition make_partition(const SylvesterProblem& p, PartitionScheme scheme,
                         const PartitionOptions& options, const Graph* graph) {
  Partition out{scheme, {}, std::nullopt, p.n(), p.m(), false};
  switch (scheme) {
    case PartitionScheme::kBcColumn:
      out.nodes = bc_column_partition(p);
      break;
    case PartitionScheme::kAcRow:
      out.nodes = ac_row_partition(p);
      out.transposed = true;
      out.x_rows = p.m();
      out.x_cols = p.n();
      break;
    case PartitionScheme::kGrouped:
      out.nodes = grouped_column_partition(p, options.groups);
      break;
    case PartitionScheme::kHighRes:
      out.nodes = high_res_partition(p);
      break;
    case PartitionScheme::kLyapunovSym:
      require_square_problem(p, "lyapunov_sym_partition");
      if ((p.B() - p.A().transpose()).norm() > 1e-12 * (1.0 + p.A().norm())) {
        throw ContractViolation("lyapunov-sym partition requires B = A^T");
      }
      out.nodes = lyapunov_sym_partition(p.A(), p.C());
      break;
    case PartitionScheme::kFullRowColumn:
      if (graph == nullptr) throw ContractViolation("full-row-column partition needs a graph");
      out.nodes = options.row_blocks.empty() ? full_rowcol_partition(p, *graph)
                                             : full_rowcol_partition(p, *graph, options.row_blocks);
      break;
    case PartitionScheme::kClustering:
      out.clusters = clustering_partition(p);
      break;
  }
  return out;
}

}  // namespace sylflow
