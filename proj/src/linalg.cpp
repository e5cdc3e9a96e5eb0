#include "cvp/linalg.hpp"

#include <cmath>
#include <limits>

namespace cvp::linalg {

Matrix submatrix(const Matrix& M, const IndexSet& rows, const IndexSet& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          M(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
  return out;
}

Vector gather(const Vector& v, const IndexSet& idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    out(static_cast<Eigen::Index>(a)) = v(static_cast<Eigen::Index>(idx[a]));
  return out;
}

Vector scatter(const Vector& v, const IndexSet& idx, std::size_t n) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < idx.size(); ++a)
    out(static_cast<Eigen::Index>(idx[a])) = v(static_cast<Eigen::Index>(a));
  return out;
}

double min_eigenvalue(const Matrix& sym) {
  if (sym.rows() == 0) return std::numeric_limits<double>::infinity();
  if (sym.rows() == 1) return sym(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double spectral_norm_symmetric(const Matrix& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix null_space(const Matrix& A, double tol) {
  const auto cols = A.cols();
  if (cols == 0) return Matrix(0, 0);
  if (A.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return svd.matrixV().rightCols(cols - r);
}

Matrix column_basis(const Matrix& C, double tol) {
  if (C.cols() == 0 || C.rows() == 0) return Matrix(C.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

std::size_t rank(const Matrix& A, double tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(A);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

SymmetricSolve solve_symmetric(const Matrix& A, const Vector& b, double tol) {
  SymmetricSolve out;
  const auto k = A.rows();
  if (k == 0) {
    out.particular = Vector(0);
    out.null_basis = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  const Vector& lam = es.eigenvalues();
  const Matrix& V = es.eigenvectors();
  const Vector c = V.transpose() * b;
  Vector y = Vector::Zero(k);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(lam(i)) > tol)
      y(i) = c(i) / lam(i);
    else
      null_cols.push_back(i);
  }
  // LU is more accurate than the eigenbasis when nothing is truncated.
  out.particular = null_cols.empty() ? Vector(A.partialPivLu().solve(b)) : Vector(V * y);
  out.null_basis = Matrix(k, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t j = 0; j < null_cols.size(); ++j)
    out.null_basis.col(static_cast<Eigen::Index>(j)) = V.col(null_cols[j]);
  out.residual = (A * out.particular - b).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace cvp::linalg
