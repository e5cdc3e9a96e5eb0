#include "cvp/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvp/linalg.hpp"

namespace cvp::qp {

namespace {

Matrix stack_rows(const Matrix& E, const std::vector<Eigen::Index>& eq_rows, const Matrix& A,
                  const std::vector<Eigen::Index>& work, Eigen::Index d) {
  Matrix C(static_cast<Eigen::Index>(eq_rows.size() + work.size()), d);
  Eigen::Index r = 0;
  for (auto i : eq_rows) C.row(r++) = E.row(i);
  for (auto i : work) C.row(r++) = A.row(i);
  return C;
}

}  // namespace

Result solve(const Problem& p, const Vector& x0, double tol) {
  const Eigen::Index d = x0.size();
  const Eigen::Index m = p.A.rows();
  const double rank_tol = 1e-12;
  Result res;
  Vector x = x0;

  // Independent subset of the equality rows.
  std::vector<Eigen::Index> eq_rows;
  for (Eigen::Index i = 0; i < p.E.rows(); ++i) {
    eq_rows.push_back(i);
    if (linalg::rank(stack_rows(p.E, eq_rows, p.A, {}, d), rank_tol) < eq_rows.size()) eq_rows.pop_back();
  }

  std::vector<Eigen::Index> work;
  std::vector<bool> in_work(static_cast<std::size_t>(m), false);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(p.A.row(i).dot(x) - p.b(i)) > tol * (1.0 + std::abs(p.b(i)))) continue;
    work.push_back(i);
    if (linalg::rank(stack_rows(p.E, eq_rows, p.A, work, d), rank_tol) < eq_rows.size() + work.size())
      work.pop_back();
    else
      in_work[static_cast<std::size_t>(i)] = true;
  }

  const std::size_t max_iter = 200 * static_cast<std::size_t>(d + m + 1);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    const Matrix C = stack_rows(p.E, eq_rows, p.A, work, d);
    const Matrix Z = C.rows() ? linalg::null_space(C, rank_tol) : Matrix(Matrix::Identity(d, d));
    const Vector grad = p.H * x + p.g;
    Vector step = Vector::Zero(d);
    bool ray = false;
    if (Z.cols() > 0) {
      const Matrix Hz = Z.transpose() * p.H * Z;
      const Vector gz = Z.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<Matrix> es(Hz);
      const Vector c = es.eigenvectors().transpose() * gz;
      const double lam_tol = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
      Vector pz = Vector::Zero(Z.cols());
      for (Eigen::Index i = 0; i < c.size(); ++i)
        if (es.eigenvalues()(i) <= lam_tol && std::abs(c(i)) > tol) ray = true;
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (ray) {
          if (lam <= lam_tol) pz -= c(i) * es.eigenvectors().col(i);
        } else if (lam > lam_tol) {
          pz -= (c(i) / lam) * es.eigenvectors().col(i);
        }
      }
      step = Z * pz;
    }

    if (step.cwiseAbs().maxCoeff() <= tol * (1.0 + x.cwiseAbs().maxCoeff()) && !ray) {
      if (work.empty()) break;
      // Multipliers: grad + C^T mu = 0.
      const Vector mu = C.transpose().colPivHouseholderQr().solve(-grad);
      Eigen::Index drop = -1;
      for (std::size_t k = 0; k < work.size(); ++k) {
        const double v = mu(static_cast<Eigen::Index>(eq_rows.size() + k));
        if (v < -tol && (drop < 0 || work[k] < work[static_cast<std::size_t>(drop)]))
          drop = static_cast<Eigen::Index>(k);
      }
      if (drop < 0) break;
      in_work[static_cast<std::size_t>(work[static_cast<std::size_t>(drop)])] = false;
      work.erase(work.begin() + drop);
      continue;
    }

    double alpha = ray ? std::numeric_limits<double>::infinity() : 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (in_work[static_cast<std::size_t>(i)]) continue;
      const double ap = p.A.row(i).dot(step);
      if (ap <= 1e-14) continue;
      const double t = std::max(0.0, (p.b(i) - p.A.row(i).dot(x)) / ap);
      if (t < alpha) { alpha = t; blocking = i; }
    }
    if (!std::isfinite(alpha)) {
      res.unbounded = true;
      res.x = x;
      return res;
    }
    x += alpha * step;
    if (blocking >= 0) {
      work.push_back(blocking);
      in_work[static_cast<std::size_t>(blocking)] = true;
    }
    if (iter + 1 == max_iter) {
      res.x = x;
      res.objective = 0.5 * x.dot(p.H * x) + p.g.dot(x);
      return res;
    }
  }
  res.converged = true;
  res.x = x;
  res.objective = 0.5 * x.dot(p.H * x) + p.g.dot(x);
  return res;
}

}  // namespace cvp::qp
