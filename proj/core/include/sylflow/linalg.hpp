#pragma once

// Dense real linear-algebra kernel used by every other module. Matrices are
// Eigen column-major dynamic matrices; vec() stacks columns top to bottom.

#include <Eigen/Dense>

namespace sylflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Column-major vectorization.
Vector vec(const Matrix& m);

/// Inverse of vec(). Throws DimensionError when v.size() != rows * cols.
Matrix unvec(const Vector& v, Index rows, Index cols);

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// 1e-12 * sigma_max * max(rows, cols) are treated as zero.
Matrix pinv(const Matrix& m);

/// Eigenvalues of a symmetric matrix, sorted descending.
/// Throws ContractViolation if ||S - S^T||_F exceeds
/// `symmetry_tol * (1 + ||S||_F)`.
Vector sym_eig_desc(const Matrix& s, double symmetry_tol = 1e-9);

struct SymmetricEigen {
  Vector values;   // descending
  Matrix vectors;  // column k pairs with values(k)
};

/// Eigen-decomposition of a symmetric matrix with descending ordering.
SymmetricEigen sym_eigen_desc(const Matrix& s, double symmetry_tol = 1e-9);

inline constexpr double kDefaultRankTol = 1e-10;

/// Number of singular values strictly above rel_tol * sigma_max.
/// The zero matrix (and empty matrices) have rank 0.
int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

/// The n^2 x n^2 permutation P with P vec(M) = vec(M^T).
Matrix symmetrizer_permutation(int n);

/// e_i in R^n, 1-based. Throws DimensionError unless 1 <= i <= n.
Vector standard_basis(int n, int i);

/// (M + M^T) / 2.
Matrix symmetric_part(const Matrix& m);

/// True when every entry is finite.
bool all_finite(const Matrix& m);

}  // namespace sylflow
