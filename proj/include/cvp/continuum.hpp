#pragma once

#include <vector>

#include "cvp/types.hpp"

namespace cvp {

struct CircleDiscretization {
  std::size_t n = 0;
  int kernel_terms = 27;

  explicit CircleDiscretization(std::size_t points, int terms = 27);
  double point(std::size_t k) const;
  double quadrature_weight() const;
};

// Kernel value at angular separation theta; `modified` drops the first
// Fourier mode.
double circle_kernel(double theta, int terms, bool modified);

// Entries are raw kernel samples K(x_i - x_j); a measure is a vector of
// masses (density times 2 pi / n), so L rho approximates the integral operator.
LagrangianMatrix heat_kernel_circle(const CircleDiscretization& disc);
LagrangianMatrix modified_heat_kernel_circle(const CircleDiscretization& disc);

// Eigenvalues of the sampled untruncated kernel, by frequency m = 0..n-1,
// summing every aliased Fourier mode in extended precision.
std::vector<long double> circle_spectrum(const CircleDiscretization& disc, bool modified);

Measure uniform_solution_reference(const CircleDiscretization& disc, double C);

// Instance with labels x0..x{n-1}, s = 1 and constant potential C.
ProblemInstance circle_instance(const CircleDiscretization& disc, bool modified, double C);

}  // namespace cvp
