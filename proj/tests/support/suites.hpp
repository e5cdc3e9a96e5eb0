#pragma once

#include <cstdint>
#include <string>

namespace cvp::testing {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return cases > 0 && failures == 0; }
  std::string summary() const;
};

// Each suite draws `cases` random instances from `seed` and checks one
// property on every certified minimizer it gets.
SuiteResult rescaling_suite(std::uint64_t seed, std::size_t cases);
SuiteResult minimal_action_suite(std::uint64_t seed, std::size_t cases);
SuiteResult support_bound_suite(std::uint64_t seed, std::size_t cases);
SuiteResult localization_suite(std::uint64_t seed, std::size_t cases);
SuiteResult replacement_suite(std::uint64_t seed, std::size_t cases);
SuiteResult apriori_suite(std::uint64_t seed, std::size_t cases);

// L = 1 everywhere: mass 1 - min phi and support in argmin phi.
SuiteResult constant_lagrangian_suite(std::uint64_t seed, std::size_t cases);

// Enumeration against the lattice oracle (n <= 4, step 0.05).
SuiteResult grid_oracle_suite(std::uint64_t seed, std::size_t cases);

}  // namespace cvp::testing
