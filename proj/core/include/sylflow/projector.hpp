#pragma once

#include "sylflow/linalg.hpp"
#include "sylflow/partition.hpp"

namespace sylflow {

/// Orthogonal projector onto the affine set {y : H y = c}:
///   proj(x) = (I - H^+ H) x + H^+ c.
/// For inconsistent (H, c) the same formula projects onto the least-squares
/// affine set {y : H^T H y = H^T c}.
class AffineProjector {
 public:
  AffineProjector(const Matrix& h, const Vector& c);

  Index dim() const { return offset_.size(); }

  Vector apply(const Vector& x) const;

  /// out = proj(x) - x = H^+ c - H^+ H x. `out` must not alias `x`.
  void displacement(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) const;

  /// I - H^+ H.
  Matrix linear_part() const;
  /// H^+ H, symmetric idempotent.
  Matrix gram() const;
  /// H^+ c.
  const Vector& offset() const { return offset_; }

 private:
  // Thin factors when H has few rows relative to its width, else the dense
  // d x d matrix H^+ H.
  bool factored_;
  Matrix h_;
  Matrix h_pinv_;
  Matrix gram_;
  Vector offset_;
};

AffineProjector build_projector(const NodeEquation& eq);
std::vector<AffineProjector> build_projectors(const std::vector<NodeEquation>& eqs);

}  // namespace sylflow
