#pragma once

#include <cstdint>

#include "spinrelay/core.hpp"
#include "spinrelay/integrator.hpp"

namespace spinrelay {

/// Brute-force master-equation evolution on the full 2^N Hilbert space.
/// Site k is bit k-1 of the basis index; a set bit is the excited state |1>.
/// Used only to cross-check the sector reduction, so N is capped at 8.
inline constexpr int kOracleMaxSites = 8;

struct OracleOptions {
  /// sigma^z eigenvalue assigned to |1>; flipping it must not change anything.
  int sz_sign = +1;
  StepControl control{};
};

std::uint32_t full_index(int sector_label) noexcept;

Operator embed_in_full(const Operator& sector_op, int n_total);
Operator project_to_sector(const Operator& full_op, int n_total);
/// Largest |element| with a row or column outside the <=1-excitation sector.
double out_of_sector_weight(const Operator& full_op, int n_total);
/// Reduced state of qubit N by explicit partial trace over the other N-1 qubits.
Eigen::Matrix2cd full_partial_trace_receiver(const Operator& full_op, int n_total);

/// Right-hand side -i[H, rho] + gamma sum_k (Z_k rho Z_k - rho) built from spin operators.
Operator full_lindblad_rhs(const ChainConfig& config, const Operator& rho_full, int sz_sign = +1);

Operator oracle_evolve_full(const ChainConfig& config, const Operator& rho_full, double duration,
                            const OracleOptions& options = {});

}  // namespace spinrelay
