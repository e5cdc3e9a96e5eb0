#pragma once

#include <vector>

#include "cvp/parallel.hpp"
#include "cvp/types.hpp"

namespace cvp {

struct DependenceCertificate {
  IndexSet subset;
  double constrained_min_eig = 0.0;  // +inf when only mu = 0 satisfies the constraints
  bool trivial_subspace = false;
  bool certified_dependent = false;
};

// min of mu^T L mu over unit mu supported on `subset` with (L mu)_i = 0 on `anchor`.
double constrained_quadratic_min(const IndexSet& subset, const IndexSet& anchor, const ProblemInstance& inst,
                                 const Tolerances& tol = kTol);

DependenceCertificate certify_dependent(const IndexSet& subset, const InitialData& initial,
                                        const ProblemInstance& inst, const Tolerances& tol = kTol);

// Inclusion-maximal certified enclosing subsets, ascending by mask.
std::vector<IndexSet> maximal_dependent_sets(const InitialData& initial, const ProblemInstance& inst,
                                             Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

IndexSet domain_of_dependence(const InitialData& initial, const ProblemInstance& inst,
                              Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

struct DefiniteCertificate {
  bool definite = false;
  bool positive = false;          // condition (i)
  bool bounded = false;           // condition (ii)
  double min_eigenvalue = 0.0;
  double max_lrho = 0.0;          // over every vertex of every solution polytope on the subset
  std::size_t vertices_checked = 0;
};

DefiniteCertificate certify_definite(const IndexSet& subset, const InitialData& initial, const ProblemInstance& inst,
                                     const Tolerances& tol = kTol);

struct SolutionGerm {
  IndexSet subset;
  Measure rho;  // full length, zero outside subset
  double volume = 0.0;
};

std::vector<SolutionGerm> solution_germs(const InitialData& initial, const ProblemInstance& inst,
                                         Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

Measure maximal_optimal_solution(const InitialData& initial, const ProblemInstance& inst,
                                 Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

// The instance seen from inside J (labels, L, potential and initial data restricted).
ProblemInstance restrict_instance(const ProblemInstance& inst, const IndexSet& J);
InitialData restrict_initial(const InitialData& initial, const IndexSet& J);

}  // namespace cvp
