#include "sylflow/projector.hpp"

#include "sylflow/errors.hpp"

namespace sylflow {

AffineProjector::AffineProjector(const Matrix& h, const Vector& c) {
  if (h.rows() != c.size()) {
    throw DimensionError("projector: H has " + std::to_string(h.rows()) + " rows but c has " +
                         std::to_string(c.size()) + " entries");
  }
  const Matrix h_pinv = pinv(h);
  offset_ = h_pinv * c;
  factored_ = 2 * h.rows() < h.cols();
  if (factored_) {
    h_ = h;
    h_pinv_ = h_pinv;
  } else {
    gram_ = h_pinv * h;
  }
}

Vector AffineProjector::apply(const Vector& x) const {
  Vector d(x.size());
  displacement(x, d);
  return x + d;
}

void AffineProjector::displacement(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) const {
  if (x.size() != dim() || out.size() != dim()) {
    throw DimensionError("projector: state of length " + std::to_string(x.size()) +
                         " for a projector of dimension " + std::to_string(dim()));
  }
  if (factored_) {
    out.noalias() = -h_pinv_ * (h_ * x);
  } else {
    out.noalias() = -gram_ * x;
  }
  out += offset_;
}

Matrix AffineProjector::gram() const { return factored_ ? Matrix(h_pinv_ * h_) : gram_; }

Matrix AffineProjector::linear_part() const {
  return Matrix::Identity(dim(), dim()) - gram();
}

AffineProjector build_projector(const NodeEquation& eq) { return AffineProjector(eq.H, eq.c); }

std::vector<AffineProjector> build_projectors(const std::vector<NodeEquation>& eqs) {
  std::vector<AffineProjector> out;
  out.reserve(eqs.size());
  for (const auto& e : eqs) out.push_back(build_projector(e));
  return out;
}

}  // namespace sylflow
