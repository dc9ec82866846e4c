#include "sylflow/linalg.hpp"

#include <algorithm>
#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix pinv(const Matrix& m) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  const double cutoff = 1e-12 * sigma(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  Vector inv = Vector::Zero(sigma.size());
  for (Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) inv(k) = 1.0 / sigma(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

namespace {

void require_symmetric(const Matrix& s, double symmetry_tol, const char* who) {
  if (s.rows() != s.cols()) {
    throw DimensionError(std::string(who) + ": matrix is not square");
  }
  const double asym = (s - s.transpose()).norm();
  if (asym > symmetry_tol * (1.0 + s.norm())) {
    throw ContractViolation(std::string(who) + ": matrix is not symmetric (||S - S^T||_F = " +
                            std::to_string(asym) + ")");
  }
}

}  // namespace

SymmetricEigen sym_eigen_desc(const Matrix& s, double symmetry_tol) {
  require_symmetric(s, symmetry_tol, "sym_eigen_desc");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_part(s));
  // Eigen returns ascending order.
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

Vector sym_eig_desc(const Matrix& s, double symmetry_tol) {
  require_symmetric(s, symmetry_tol, "sym_eig_desc");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_part(s), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Vector sigma = Eigen::BDCSVD<Matrix>(m).singularValues();
  if (sigma(0) == 0.0) return 0;
  const double cutoff = rel_tol * sigma(0);
  return static_cast<int>((sigma.array() > cutoff).count());
}

Matrix symmetrizer_permutation(int n) {
  if (n < 1) throw DimensionError("symmetrizer_permutation: n must be >= 1");
  const Index nn = static_cast<Index>(n) * n;
  Matrix p = Matrix::Zero(nn, nn);
  // vec(M)[j*n + i] = M(i, j); vec(M^T)[i*n + j] = M(i, j).
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) p(i * n + j, j * n + i) = 1.0;
  }
  return p;
}

Vector standard_basis(int n, int i) {
  if (n < 1 || i < 1 || i > n) {
    throw DimensionError("standard_basis: index " + std::to_string(i) + " outside 1.." +
                         std::to_string(n));
  }
  Vector e = Vector::Zero(n);
  e(i - 1) = 1.0;
  return e;
}

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace sylflow
