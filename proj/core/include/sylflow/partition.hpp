#pragma once

// Data partitions: how the Sylvester triplet (A, B, C) is spread over network
// nodes. Each plain scheme turns the problem into per-node affine equations
// H_i y = c_i whose common solutions are exactly vec(X) for solutions X of
// A X + X B = C. The clustering scheme produces block operators instead.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sylflow/graph.hpp"
#include "sylflow/linalg.hpp"

namespace sylflow {

/// A X + X B = C with A n x n, B m x m, C n x m.
class SylvesterProblem {
 public:
  /// Throws DimensionError on non-conformable shapes and NumericError on
  /// non-finite entries.
  SylvesterProblem(Matrix a, Matrix b, Matrix c);

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  const Matrix& C() const { return c_; }
  Index n() const { return a_.rows(); }
  Index m() const { return b_.rows(); }
  bool is_square() const { return n() == m(); }

  /// The equivalent problem B^T X^T + X^T A^T = C^T.
  SylvesterProblem transposed() const;

  /// The Lyapunov instance A X + X A^T = C.
  static SylvesterProblem lyapunov(const Matrix& a, const Matrix& c);

 private:
  Matrix a_;
  Matrix b_;
  Matrix c_;
};

/// I_m (x) A + B^T (x) I_n, the vectorized Sylvester operator.
Matrix sylvester_operator(const SylvesterProblem& p);

/// One node's affine constraint set {y : H y = c}.
struct NodeEquation {
  int node_id = 0;  // 1-based
  Matrix H;
  Vector c;

  Index unknown_dim() const { return H.cols(); }
  Index row_count() const { return H.rows(); }
};

/// col{H_1, ..., H_N}
Matrix stack_operators(const std::vector<NodeEquation>& eqs);
/// col{c_1, ..., c_N}
Vector stack_rhs(const std::vector<NodeEquation>& eqs);

/// Per-cluster block operators of the clustering partition.
struct ClusterOperators {
  int n = 0;
  std::vector<Matrix> M;        // M_i = diag{1_{j=i} A + B_ji I_n : j = 1..n}
  std::vector<Vector> C_tilde;  // C~_i = col{C_1i e_1, ..., C_ni e_n}

  Matrix stacked_M() const;  // diag{M_1, ..., M_n}
  Vector stacked_C() const;  // col{C~_1, ..., C~_n}
};

/// Node i holds A plus column i of B and C. m nodes, unknown dim n*m.
std::vector<NodeEquation> bc_column_partition(const SylvesterProblem& p);

/// Node i holds B plus row i of A and C: bc_column_partition of the
/// transposed problem, so the unknown is vec(X^T). n nodes.
std::vector<NodeEquation> ac_row_partition(const SylvesterProblem& p);

/// Node i holds the columns in groups[i] (1-based). Groups may overlap but
/// must be nonempty and jointly cover 1..m. Throws PartitionError.
std::vector<NodeEquation> grouped_column_partition(const SylvesterProblem& p,
                                                   const std::vector<std::vector<int>>& groups);

/// n^2 single-row nodes; node (k-1) n + l holds row l of A, column k of B
/// and C_lk. Square problems only.
std::vector<NodeEquation> high_res_partition(const SylvesterProblem& p);

/// n(n+1)/2 nodes for A X + X A^T = C with symmetric C. Node
/// g(k,l) = (k-1) n + l - k(k-1)/2 (k <= l) stacks the high-resolution rows
/// for (k,l) and (l,k); diagonal nodes keep the duplicated row.
/// Throws ContractViolation if C is not symmetric.
std::vector<NodeEquation> lyapunov_sym_partition(const Matrix& a, const Matrix& c);

/// Augmented full row/column partition. Node i holds rows R_i of A and the
/// matching columns of B and C; its unknown is y = col{vec(X), vec(Z)} with
/// Z in R^{N n x n}, so the unknown dimension is n^2 (1 + N). The one-index
/// form (R_i = {i}) requires g.node_count() == n.
std::vector<NodeEquation> full_rowcol_partition(const SylvesterProblem& p, const Graph& g);

/// Block variant: row_blocks[i] lists the (1-based) rows of A held by node
/// i + 1. Blocks must be disjoint, nonempty and cover 1..n.
std::vector<NodeEquation> full_rowcol_partition(const SylvesterProblem& p, const Graph& g,
                                                const std::vector<std::vector<int>>& row_blocks);

/// Clustering block partition over n clusters of n nodes. Square problems only.
ClusterOperators clustering_partition(const SylvesterProblem& p);

enum class SolvabilityCase { kUnique = 1, kInfinite = 2, kNone = 3 };

std::string_view to_string(SolvabilityCase c);

struct ConsistencyReport {
  SolvabilityCase solvability;
  int rank;         // numerical rank of the vectorized operator
  double residual;  // ||H H^+ c - c||
};

inline constexpr double kConsistencyTol = 1e-8;

ConsistencyReport consistency_check(const SylvesterProblem& p);

enum class PartitionScheme {
  kBcColumn,
  kAcRow,
  kGrouped,
  kHighRes,
  kLyapunovSym,
  kFullRowColumn,
  kClustering,
};

/// "bc-column" | "ac-row" | "grouped" | "high-res" | "lyapunov-sym" |
/// "full-row-column" | "clustering".
std::optional<PartitionScheme> parse_partition_scheme(std::string_view name);
std::string_view to_string(PartitionScheme scheme);

struct PartitionOptions {
  std::vector<std::vector<int>> groups;      // grouped
  std::vector<std::vector<int>> row_blocks;  // full-row-column with fewer nodes than rows
};

/// A partitioned problem ready for simulation. For plain schemes the node
/// unknown is vec(X) (or vec(X^T) when `transposed`), possibly followed by
/// auxiliary coordinates (augmented scheme): the first `x_dim` entries of a
/// node state are the X block.
struct Partition {
  PartitionScheme scheme;
  std::vector<NodeEquation> nodes;
  std::optional<ClusterOperators> clusters;
  Index x_rows = 0;
  Index x_cols = 0;
  bool transposed = false;

  Index x_dim() const { return x_rows * x_cols; }
  Index node_dim() const;
  int node_count() const;
};

/// Builds any scheme. `graph` is required for the full row/column scheme and
/// ignored otherwise.
Partition make_partition(const SylvesterProblem& p, PartitionScheme scheme,
                         const PartitionOptions& options = {}, const Graph* graph = nullptr);

}  // namespace sylflow
