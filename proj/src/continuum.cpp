#include "cvp/continuum.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cvp/core_model.hpp"

namespace cvp {

CircleDiscretization::CircleDiscretization(std::size_t points, int terms) : n(points), kernel_terms(terms) {
  if (n < 3) throw Error(ErrorCode::InvalidDiscretization, fmt::format("circle needs n >= 3, got {}", n));
  if (terms < 1) throw Error(ErrorCode::InvalidDiscretization, "kernel needs at least one Fourier term");
}

double CircleDiscretization::point(std::size_t k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
}

double CircleDiscretization::quadrature_weight() const { return 2.0 * std::numbers::pi / static_cast<double>(n); }

double circle_kernel(double theta, int terms, bool modified) {
  double sum = 0.0;
  // Smallest terms first.
  for (int k = terms; k >= (modified ? 2 : 1); --k)
    sum += std::exp(-static_cast<double>(k) * k) * std::cos(k * theta);
  return 1.0 / (2.0 * std::numbers::pi) + sum / std::numbers::pi;
}

namespace {

LagrangianMatrix circulant(const CircleDiscretization& disc, bool modified) {
  const std::size_t n = disc.n;
  std::vector<double> c(n / 2 + 1);
  for (std::size_t d = 0; d <= n / 2; ++d) {
    double v = circle_kernel(disc.point(d), disc.kernel_terms, modified);
    if (std::abs(v) < 1e-14) v = 0.0;
    if (v < 0.0)
      throw Error(ErrorCode::NegativeEntry, fmt::format("kernel is negative ({}) at separation {}", v, d));
    c[d] = v;
  }
  Matrix L(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = (i + n - j) % n;
      L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[std::min(d, n - d)];
    }
  return validate_lagrangian(L);
}

}  // namespace

LagrangianMatrix heat_kernel_circle(const CircleDiscretization& disc) { return circulant(disc, false); }

LagrangianMatrix modified_heat_kernel_circle(const CircleDiscretization& disc) {
  if (disc.n < 5) throw Error(ErrorCode::InvalidDiscretization, "modified kernel needs n >= 5");
  return circulant(disc, true);
}

std::vector<long double> circle_spectrum(const CircleDiscretization& disc, bool modified) {
  // lambda_m = n / (2 pi) * sum over k = m mod n of exp(-k^2).
  const long n = static_cast<long>(disc.n);
  const long kmax = 2 * n + 40;
  std::vector<long double> out(disc.n, 0.0L);
  for (long m = 0; m < n; ++m) {
    long double s = 0.0L;
    for (long k = -kmax; k <= kmax; ++k) {
      if (((k % n) + n) % n != m) continue;
      if (modified && (k == 1 || k == -1)) continue;
      s += std::exp(-static_cast<long double>(k) * static_cast<long double>(k));
    }
    out[static_cast<std::size_t>(m)] = s * static_cast<long double>(n) / (2.0L * std::numbers::pi_v<long double>);
  }
  return out;
}

Measure uniform_solution_reference(const CircleDiscretization& disc, double C) {
  if (!(C >= 0.0 && C < 1.0)) throw Error(ErrorCode::COutOfRange, fmt::format("C must lie in [0, 1), got {}", C));
  return Measure(Vector::Constant(static_cast<Eigen::Index>(disc.n), (1.0 - C) * disc.quadrature_weight()));
}

ProblemInstance circle_instance(const CircleDiscretization& disc, bool modified, double C) {
  auto L = modified ? modified_heat_kernel_circle(disc) : heat_kernel_circle(disc);
  return make_instance(PointSpace::indexed(disc.n, "x"), std::move(L), 1.0, Potential::constant(disc.n, C));
}

}  // namespace cvp
