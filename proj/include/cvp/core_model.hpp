#pragma once

#include "cvp/types.hpp"

namespace cvp {

// Symmetry is checked bit-for-bit. Errors name the offending (i, j).
LagrangianMatrix validate_lagrangian(const Matrix& entries);

double action_value(const Measure& rho, const Potential& phi, const ProblemInstance& inst);

struct ElResiduals {
  Vector per_point;  // (L rho)_i + phi_i - s
  double sup = 0.0;
  double psd_min_eigenvalue = 0.0;  // +inf on an empty support
};
ElResiduals el_residuals(const Measure& rho, const Potential& phi, const ProblemInstance& inst);

struct Rescaled {
  Measure rho;
  Potential phi;
  double s;
};
Rescaled rescale(const Measure& rho, const Potential& phi, double s, double lambda);

// Copy of the instance with s = 1 and the stored potential scaled by 1/s.
ProblemInstance normalized(const ProblemInstance& inst);

double apriori_volume_bound(const ProblemInstance& inst);

// Minimum eigenvalue of L restricted to idx (+inf when idx is empty).
double restricted_min_eigenvalue(const ProblemInstance& inst, const IndexSet& idx);

void require_size(std::size_t got, std::size_t n, const char* what);

}  // namespace cvp
