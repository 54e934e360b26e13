#pragma once

#include <span>
#include <vector>

#include "spinrelay/fidelity.hpp"
#include "spinrelay/measurement.hpp"

namespace spinrelay {

struct ProtocolResult {
  FidelityTrace trace;          // success-conditioned
  std::vector<double> p_k;      // every measurement performed up to t_max
  double p_suc = 1.0;           // product of p_k over k * tau <= t_m
  PeakResult peak;
  int n_measurements = 0;       // measurements with k * tau <= t_m
  StateDeviation worst;
};

/// Number of measurement times k * tau (k >= 1) not later than t.
int measurements_before(double t, double tau) noexcept;

/// Alternates evolution over tau with the channel projection and locates the
/// first peak of the conditioned average fidelity. Success probabilities are
/// those of the excitation input (theta = pi); the vacuum input always passes.
/// Throws NoPeakError or ZeroProbabilityError.
ProtocolResult run_protocol(const ChainConfig& config, const MeasurementSchedule& schedule,
                            std::span<const double> time_grid, const PeakOptions& peak_options = {});

/// p^(1) ... p^(k_max) under repeated conditioning of the excitation input.
std::vector<double> success_probability_trace(const ChainConfig& config, double tau, int k_max);

}  // namespace spinrelay
