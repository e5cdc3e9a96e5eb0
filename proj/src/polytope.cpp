#include "cvp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "cvp/linalg.hpp"

namespace cvp::poly {

// Coordinates closer than 1e-9 count as equal, so round-off from a different
// insertion order does not reorder the output.
bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i)
    if (std::abs(a(i) - b(i)) > 1e-9) return a(i) < b(i);
  return a.size() < b.size();
}

namespace {

struct Ray {
  Vector v;
  boost::dynamic_bitset<> zeros;
};

void normalize(Vector& v) {
  const double s = v.cwiseAbs().maxCoeff();
  if (s > 0) v /= s;
}

}  // namespace

std::vector<Vector> vertices(const HPolytope& P, const std::vector<std::size_t>& order_in, double tol) {
  const Eigen::Index d = P.dim();
  const Eigen::Index m = P.A.rows();
  std::vector<Vector> out;
  if (d == 0) {
    if (m == 0 || P.b.minCoeff() >= -tol) out.emplace_back(Vector(0));
    return out;
  }

  // Homogenized rows h_j = (a_j, -b_j) / |.|; row m is -t <= 0.
  const Eigen::Index M = m + 1;
  Matrix H(M, d + 1);
  for (Eigen::Index j = 0; j < m; ++j) {
    H.row(j).head(d) = P.A.row(j);
    H(j, d) = -P.b(j);
    const double nrm = H.row(j).norm();
    if (nrm > 0) H.row(j) /= nrm;
  }
  H.row(m).setZero();
  H(m, d) = -1.0;

  std::vector<std::size_t> order = order_in;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
  }
  order.insert(order.begin(), static_cast<std::size_t>(m));  // t >= 0 first

  // Initial basis of d+1 independent rows.
  std::vector<Eigen::Index> basis;
  std::vector<bool> used(static_cast<std::size_t>(M), false);
  for (auto j : order) {
    basis.push_back(static_cast<Eigen::Index>(j));
    Matrix B(static_cast<Eigen::Index>(basis.size()), d + 1);
    for (std::size_t k = 0; k < basis.size(); ++k) B.row(static_cast<Eigen::Index>(k)) = H.row(basis[k]);
    if (linalg::rank(B, 1e-10) < basis.size())
      basis.pop_back();
    else
      used[j] = true;
    if (static_cast<Eigen::Index>(basis.size()) == d + 1) break;
  }
  if (static_cast<Eigen::Index>(basis.size()) < d + 1)
    throw Error(ErrorCode::NumericalFailure, "polytope constraint matrix does not bound the region");

  Matrix HB(d + 1, d + 1);
  for (Eigen::Index k = 0; k <= d; ++k) HB.row(k) = H.row(basis[static_cast<std::size_t>(k)]);
  const Matrix R0 = -HB.fullPivLu().inverse();
  std::vector<Ray> rays;
  for (Eigen::Index k = 0; k <= d; ++k) {
    Ray r{R0.col(k), boost::dynamic_bitset<>(static_cast<std::size_t>(M))};
    normalize(r.v);
    for (Eigen::Index j = 0; j <= d; ++j)
      if (j != k) r.zeros.set(static_cast<std::size_t>(basis[static_cast<std::size_t>(j)]));
    rays.push_back(std::move(r));
  }

  const double ztol = 1e-10;
  for (auto j : order) {
    if (used[j]) continue;
    const Vector h = H.row(static_cast<Eigen::Index>(j)).transpose();
    std::vector<double> val(rays.size());
    std::vector<std::size_t> plus, minus, zero;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = h.dot(rays[k].v);
      if (val[k] > ztol) plus.push_back(k);
      else if (val[k] < -ztol) minus.push_back(k);
      else zero.push_back(k);
    }
    if (plus.empty()) {
      for (auto k : zero) rays[k].zeros.set(j);
      used[j] = true;
      continue;
    }
    std::vector<Ray> next;
    for (auto p : plus) {
      for (auto q : minus) {
        const auto common = rays[p].zeros & rays[q].zeros;
        if (static_cast<Eigen::Index>(common.count()) < d - 1) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        Ray nr{val[p] * rays[q].v - val[q] * rays[p].v, common};
        normalize(nr.v);
        nr.zeros.set(j);
        next.push_back(std::move(nr));
      }
    }
    for (auto k : zero) {
      rays[k].zeros.set(j);
      next.push_back(std::move(rays[k]));
    }
    for (auto k : minus) next.push_back(std::move(rays[k]));
    rays = std::move(next);
    used[j] = true;
  }

  for (const auto& r : rays) {
    if (r.v(d) <= 1e-12) continue;
    Vector x = r.v.head(d) / r.v(d);
    if (m > 0 && ((P.A * x - P.b).maxCoeff() > tol * (1.0 + P.b.cwiseAbs().maxCoeff()))) continue;
    out.push_back(std::move(x));
  }
  std::vector<Vector> uniq;
  for (auto& v : out) {
    bool dup = false;
    for (const auto& u : uniq)
      if ((u - v).cwiseAbs().maxCoeff() <= tol) { dup = true; break; }
    if (!dup) uniq.push_back(std::move(v));
  }
  std::sort(uniq.begin(), uniq.end(), lex_less);
  return uniq;
}

Matrix affine_directions(const std::vector<Vector>& pts, double tol) {
  if (pts.size() < 2) return Matrix(pts.empty() ? 0 : pts.front().size(), 0);
  Matrix D(pts.front().size(), static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t k = 1; k < pts.size(); ++k) D.col(static_cast<Eigen::Index>(k - 1)) = pts[k] - pts[0];
  return linalg::column_basis(D, tol);
}

}  // namespace cvp::poly
