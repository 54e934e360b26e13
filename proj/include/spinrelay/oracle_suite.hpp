#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinrelay/core.hpp"

namespace spinrelay {

struct OracleCheck {
  std::string name;
  double deviation = 0.0;  // measured discrepancy in the check's own units
  double tolerance = 0.0;
  bool passed = false;
};

/// Random full-rank density matrix on the sector (Ginibre construction).
Operator random_sector_state(int dim, std::uint64_t seed);

/// Max elementwise |sector propagator result - projected full-space oracle|
/// over `n_states` random inputs.
double sector_vs_full_deviation(const ChainConfig& config, double duration, int n_states,
                                std::uint64_t seed);

/// Independent cross-checks between the sector machinery, the full-space
/// oracle, the closed-form results and the Monte Carlo average.
std::vector<OracleCheck> run_oracle_suite();

}  // namespace spinrelay
