#include "sylflow/oracle.hpp"

#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

OracleSolution direct_solve(const SylvesterProblem& p) {
  const Matrix h = sylvester_operator(p);
  const Vector c = vec(p.C());
  const Vector x = pinv(h) * c;
  const ConsistencyReport report = consistency_check(p);
  return {unvec(x, p.n(), p.m()), report.solvability, (h * x - c).norm(), true};
}

AffineProjector intersection_projector(const std::vector<NodeEquation>& eqs) {
  return AffineProjector(stack_operators(eqs), stack_rhs(eqs));
}

Vector flow_limit(const std::vector<NodeEquation>& eqs, const std::vector<Vector>& initial) {
  if (eqs.empty() || initial.size() != eqs.size()) {
    throw DimensionError("flow_limit: " + std::to_string(initial.size()) +
                         " initial states for " + std::to_string(eqs.size()) + " nodes");
  }
  const Matrix h = stack_operators(eqs);
  const Vector c = stack_rhs(eqs);
  const Matrix hp = pinv(h);
  const double gap = (h * (hp * c) - c).norm();
  if (gap > kConsistencyTol * (1.0 + c.norm())) {
    throw InapplicableError("flow_limit: node equations have no common solution (residual " +
                            std::to_string(gap) + ")");
  }
  const AffineProjector proj(h, c);
  Vector sum = Vector::Zero(h.cols());
  for (const auto& x0 : initial) {
    if (x0.size() != h.cols()) throw DimensionError("flow_limit: initial state has wrong length");
    sum += proj.apply(x0);
  }
  return sum / static_cast<double>(initial.size());
}

Vector flow_limit(const std::vector<NodeEquation>& eqs, const FlowState& initial) {
  std::vector<Vector> nodes;
  for (int i = 0; i < initial.node_count; ++i) nodes.emplace_back(initial.node(i));
  return flow_limit(eqs, nodes);
}

Vector linear_flow_limit(const AffineLinearSystem& sys, const Vector& initial) {
  if (initial.size() != sys.system.cols()) {
    throw DimensionError("linear_flow_limit: initial state has wrong length");
  }
  const Matrix sp = pinv(sys.system);
  const Vector particular = sp * sys.offset;
  if ((sys.system * particular - sys.offset).norm() > kConsistencyTol * (1.0 + sys.offset.norm())) {
    throw InapplicableError("linear_flow_limit: offset is not in the range of the system");
  }
  return initial - sp * (sys.system * initial) + particular;
}

Vector least_squares_reference(const SylvesterProblem& p) {
  return pinv(sylvester_operator(p)) * vec(p.C());
}

bool positive_definite_check(const Matrix& m) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  const Vector eig = sym_eig_desc(symmetric_part(m));
  return eig(eig.size() - 1) > 1e-9 * (1.0 + m.norm());
}

}  // namespace sylflow
