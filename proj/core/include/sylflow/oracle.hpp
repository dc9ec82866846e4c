#pragma once

// Ground truth computed directly from the vectorized equation, independent of
// any flow.

#include <vector>

#include "sylflow/flows.hpp"
#include "sylflow/partition.hpp"
#include "sylflow/projector.hpp"

namespace sylflow {

struct OracleSolution {
  Matrix X_star;
  SolvabilityCase solvability;
  double residual;  // ||H vec(X*) - c||
  bool is_min_norm;
};

/// X* = unvec(H^+ c). For unsolvable problems this is the min-norm
/// least-squares minimizer and `residual` is positive.
OracleSolution direct_solve(const SylvesterProblem& p);

/// Projector onto the intersection of every node's affine set, from the
/// stacked (H, c).
AffineProjector intersection_projector(const std::vector<NodeEquation>& eqs);

/// (1/N) sum_i proj_cap(x_i(0)): the limit every node of the
/// consensus + projection flow reaches. Throws InapplicableError when the
/// stacked equations are inconsistent.
Vector flow_limit(const std::vector<NodeEquation>& eqs, const std::vector<Vector>& initial);
Vector flow_limit(const std::vector<NodeEquation>& eqs, const FlowState& initial);

/// Limit of d/dt s = -S s + q for symmetric positive semidefinite S with
/// q in range(S): (I - S^+ S) s0 + S^+ q.
Vector linear_flow_limit(const AffineLinearSystem& sys, const Vector& initial);

/// H^+ c, the min-norm least-squares solution of the stacked system.
Vector least_squares_reference(const SylvesterProblem& p);

/// True iff the smallest eigenvalue of (M + M^T)/2 exceeds 1e-9 (1 + ||M||_F).
bool positive_definite_check(const Matrix& m);

}  // namespace sylflow
