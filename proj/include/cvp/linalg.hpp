#pragma once

#include "cvp/types.hpp"

namespace cvp::linalg {

Matrix submatrix(const Matrix& M, const IndexSet& rows, const IndexSet& cols);
inline Matrix principal(const Matrix& M, const IndexSet& idx) { return submatrix(M, idx, idx); }
Vector gather(const Vector& v, const IndexSet& idx);
// Full-length vector with v placed at idx and zeros elsewhere.
Vector scatter(const Vector& v, const IndexSet& idx, std::size_t n);

// Smallest eigenvalue of a symmetric matrix; +infinity for a 0x0 matrix.
double min_eigenvalue(const Matrix& sym);
double spectral_norm_symmetric(const Matrix& sym);

// Orthonormal basis (columns) of {x : A x = 0}; singular values <= tol count as zero.
Matrix null_space(const Matrix& A, double tol);
// Orthonormal basis of the column span of C.
Matrix column_basis(const Matrix& C, double tol);
std::size_t rank(const Matrix& A, double tol);

// Eigen-decomposition based pseudo-solve of a symmetric system.
struct SymmetricSolve {
  Vector particular;  // minimum-norm solution of the truncated system
  Matrix null_basis;  // eigenvectors with |lambda| <= tol
  double residual = 0.0;  // sup norm of A x - b
};
SymmetricSolve solve_symmetric(const Matrix& A, const Vector& b, double tol);

}  // namespace cvp::linalg
