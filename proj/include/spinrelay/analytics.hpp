#pragma once

#include <array>

#include "spinrelay/core.hpp"

namespace spinrelay {

/// Second-order sender-receiver coupling mediated by a weakly attached channel.
struct EffectiveModel {
  double j_eff = 0.0;           // (-1)^{N/2} J'^2 / J
  double t_m_eff = 0.0;         // pi / (2 |j_eff|)
  double validity_ratio = 0.0;  // J' N / (pi J)
  bool weak = false;            // validity_ratio >= 0.5
};

EffectiveModel effective_model(const ChainConfig& config);

/// 1/3 + (1 + |sin(j_eff t)|)^2 / 6.
double effective_average_fidelity(double j_eff, double t) noexcept;

/// Closed-form single-excitation eigenpairs of the four-spin chain.
struct FourSpinSolution {
  double alpha = 0.0;
  std::array<double, 4> eigenvalues{};
  /// Column k is |E_k> in the site basis |1>..|4>.
  Eigen::Matrix4d eigenvectors = Eigen::Matrix4d::Zero();
};

/// (J + sqrt(J^2 + 4 J'^2)) / (2 J').
double four_spin_alpha(const ChainConfig& config) noexcept;

FourSpinSolution four_spin_solution(const ChainConfig& config);

/// Exact probability that one channel measurement at time t succeeds for the excitation input.
double four_spin_p1(const ChainConfig& config, double t);

/// Leading order in J'/J: 1 - 4 (J'/J)^2 sin^2(J t / 2).
double four_spin_p1_limit(const ChainConfig& config, double t);

/// Angular frequency |J - 2 alpha J'| of the p^(1) oscillation.
double four_spin_p1_frequency(const ChainConfig& config) noexcept;

/// Single-excitation energies of the bare channel (sites 2..N-1), ascending.
Eigen::VectorXd channel_mode_energies(const ChainConfig& config);

}  // namespace spinrelay
