#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cvp/core_model.hpp"
#include "cvp/ivp.hpp"

namespace cvp::testing {

Q exact_action(const QMat& L, const QVec& rho, const QVec& phi, Q s) {
  Q out = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < rho.size(); ++j) out += rho[i] * L[i][j] * rho[j];
    out += 2 * (phi[i] - s) * rho[i];
  }
  return out;
}

QVec exact_residuals(const QMat& L, const QVec& rho, const QVec& phi, Q s) {
  QVec r(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Q acc = phi[i] - s;
    for (std::size_t j = 0; j < rho.size(); ++j) acc += L[i][j] * rho[j];
    r[i] = acc;
  }
  return r;
}

QMat wedge_q() {
  const Q h(1, 2);
  return {{1, h, 0}, {h, 1, h}, {0, h, 1}};
}

GridOracle grid_min_action(const ProblemInstance& inst, const Potential& phi, double h, double cap) {
  const std::size_t n = inst.n();
  const Matrix& L = inst.L();
  const Vector c = phi.values() - Vector::Constant(static_cast<Eigen::Index>(n), inst.s);
  GridOracle g;
  g.volume_cap = cap;
  g.minimum = 0.0;  // rho = 0
  const auto last = static_cast<Eigen::Index>(n - 1);
  Vector rho = Vector::Zero(static_cast<Eigen::Index>(n));

  // Walk the first n-1 coordinates; the action along the last one is
  // a t^2 + 2 b t + const with a = L(last,last) > 0.
  std::function<void(Eigen::Index, double)> walk = [&](Eigen::Index k, double used) {
    if (k == last) {
      rho(last) = 0.0;
      const Vector Lr = L * rho;
      const double base = rho.dot(Lr) + 2.0 * c.dot(rho);
      const double a = L(last, last);
      const double b = Lr(last) + c(last);
      const double t = std::clamp(-b / a, 0.0, std::max(0.0, cap - used));
      g.minimum = std::min(g.minimum, base + a * t * t + 2.0 * b * t);
      ++g.points;
      return;
    }
    for (long m = 0;; ++m) {
      const double v = static_cast<double>(m) * h;
      if (used + v > cap + 1e-12) break;
      rho(k) = v;
      walk(k + 1, used + v);
    }
    rho(k) = 0.0;
  };
  walk(0, 0.0);

  const double lmax = L.cwiseAbs().maxCoeff();
  const double gmax = lmax * cap + c.cwiseAbs().maxCoeff();
  const double nn = static_cast<double>(n);
  g.slack = 2.0 * nn * h * gmax + nn * nn * h * h * lmax;
  return g;
}

std::vector<std::pair<Measure, Potential>> sampled_ivp_solutions(const InitialData& init, const ProblemInstance& inst,
                                                                 double h) {
  std::vector<double> levels;
  for (long m = 0; static_cast<double>(m) * h <= 1.0 + 1e-12; ++m) levels.push_back(static_cast<double>(m) * h);
  levels.push_back(2.0);
  const std::size_t n = inst.n();
  std::vector<std::pair<Measure, Potential>> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    Vector p(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) p(static_cast<Eigen::Index>(i)) = levels[digit[i]];
    const Potential phi(p);
    for (const auto& r : solve_ivp(init, phi, inst, Execution::Serial)) out.emplace_back(r.rho, phi);
    std::size_t i = 0;
    while (i < n && ++digit[i] == levels.size()) digit[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace cvp::testing
