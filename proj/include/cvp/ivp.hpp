#pragma once

#include <optional>
#include <vector>

#include "cvp/parallel.hpp"
#include "cvp/types.hpp"

namespace cvp {

struct AdmissibilityReport {
  bool admissible = false;
  double lrho0_max = 0.0;    // over supp rho0 ∪ I0, s = 1 scale
  double psd_min_eig = 0.0;  // L on supp rho0 ∪ I0; +inf when that set is empty
  std::optional<std::size_t> violating_index;
};

AdmissibilityReport check_admissible(const InitialData& initial, const ProblemInstance& inst,
                                     const Tolerances& tol = kTol);

bool is_totally_spacelike(const IndexSet& subset, const ProblemInstance& inst, double eps = 0.0);

// s - L rho0 on supp rho0 ∪ I0, 2s elsewhere.
Potential canonical_initial_potential(const InitialData& initial, const ProblemInstance& inst,
                                      const Tolerances& tol = kTol);

// Minimizers for phi that also satisfy rho >= rho0, L rho + phi = s on I0 and
// PSD on I0 ∪ supp rho. Degenerate families are searched for such a member.
std::vector<SolutionRecord> solve_ivp(const InitialData& initial, const Potential& phi, const ProblemInstance& inst,
                                      Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

// Conditions (a)-(c) only; does not check that rho minimizes.
bool satisfies_initial_conditions(const Measure& rho, const Potential& phi, const InitialData& initial,
                                  const ProblemInstance& inst, double el_tol = kTol.el_exact,
                                  const Tolerances& tol = kTol);

// Full membership test: global minimizer (against exhaustive enumeration) plus (a)-(c).
bool is_ivp_solution(const Measure& rho, const Potential& phi, const InitialData& initial,
                     const ProblemInstance& inst, double el_tol = kTol.el_exact, const Tolerances& tol = kTol);

}  // namespace cvp
