#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinrelay/core.hpp"
#include "spinrelay/dynamics.hpp"
#include "spinrelay/measurement.hpp"

namespace spinrelay {

/// A measurement time on the grid produces two records with the same
/// timestamp: the value just before the projection and the one just after.
enum class RecordKind { regular, pre_measurement, post_measurement };

const char* to_string(RecordKind kind) noexcept;

/// Fidelity time series. f_av is always 1/2 + f_exc/6 + f_coh/3.
class FidelityTrace {
 public:
  FidelityTrace(ChainConfig config, double tau);

  void append(double t, double f_exc, double f_coh, RecordKind kind = RecordKind::regular);

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& f_exc() const noexcept { return f_exc_; }
  const std::vector<double>& f_coh() const noexcept { return f_coh_; }
  const std::vector<double>& f_av() const noexcept { return f_av_; }
  const std::vector<RecordKind>& kinds() const noexcept { return kinds_; }
  const ChainConfig& config() const noexcept { return config_; }
  /// Measurement interval the trace was conditioned on; 0 for free evolution.
  double tau() const noexcept { return tau_; }

 private:
  ChainConfig config_;
  double tau_;
  std::vector<double> times_;
  std::vector<double> f_exc_;
  std::vector<double> f_coh_;
  std::vector<double> f_av_;
  std::vector<RecordKind> kinds_;
};

/// 1/2 + f_exc/6 + f_coh/3.
double average_fidelity(double f_exc, double f_coh) noexcept;

struct PeakOptions {
  /// Drop below the running maximum that confirms it as the first peak. Must
  /// exceed the ripple from virtual channel population (about 0.014 for N=12).
  double prominence = 0.03;
  /// The peak must exceed the t=0 value by at least this much.
  double min_rise = 1e-4;
};

struct PeakResult {
  double t_m = 0.0;
  double f_m = 0.0;
  std::size_t index = 0;
};

/// First confirmed maximum of f_av. Pre-measurement records are skipped; t_m is
/// refined by a parabola through the neighbours when no jump lies between them.
/// Throws NoPeakError when the trace never falls `prominence` below its maximum.
PeakResult find_first_peak(const FidelityTrace& trace, const PeakOptions& options = {});

/// Everything the conditioned transfer engine produces in one pass.
struct TransferRun {
  FidelityTrace trace;
  /// Success probability of each performed measurement (excitation branch).
  std::vector<double> p_k;
  std::vector<double> measurement_times;
  /// Worst density-matrix deviation seen on the excitation branch.
  StateDeviation worst;
};

/// Evolves the excitation input |1><1| and the coherence operator |vac><1|
/// through the sector generator, recording F^exc, F^coh and F^av at `times`.
/// With a schedule, both operators are projected at every k*tau; the excitation
/// branch is renormalized by p_k and the coherence by sqrt(p_k), so the result
/// is the fidelity conditioned on every measurement succeeding. Throws
/// InvalidStateError if the excitation branch leaves the state space.
TransferRun run_transfer(const ChainConfig& config, std::span<const double> times,
                         const std::optional<MeasurementSchedule>& schedule = std::nullopt);

FidelityTrace transfer_fidelities(const ChainConfig& config, std::span<const double> times,
                                  const std::optional<MeasurementSchedule>& schedule = std::nullopt);

/// Haar-uniform sender state for sample `index` of stream `seed`.
/// Counter based, so any worker can draw any sample.
SenderState haar_sample(std::uint64_t seed, std::uint64_t index) noexcept;

/// <psi_s| rho_N(t) |psi_s> for one input, given the propagator for time t.
double input_fidelity(const Propagator& propagator, const SenderState& sender);

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo estimate of the Haar-averaged fidelity at time t.
McEstimate haar_average_mc(const ChainConfig& config, double t, int n_samples, std::uint64_t seed,
                           Execution execution = Execution::parallel);

}  // namespace spinrelay
