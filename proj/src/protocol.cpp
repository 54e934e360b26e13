#include "spinrelay/protocol.hpp"

#include <cmath>

#include "spinrelay/errors.hpp"

namespace spinrelay {

int measurements_before(double t, double tau) noexcept {
  if (!(tau > 0.0) || t < 0.0) return 0;
  // k * tau == t counts: the measurement at t_m has already happened.
  return static_cast<int>(std::floor(t / tau + 1e-9));
}

ProtocolResult run_protocol(const ChainConfig& config, const MeasurementSchedule& schedule,
                            std::span<const double> time_grid, const PeakOptions& peak_options) {
  schedule.validate();
  TransferRun run = run_transfer(config, time_grid, schedule);
  const PeakResult peak = find_first_peak(run.trace, peak_options);

  const int counted = std::min<int>(measurements_before(peak.t_m, schedule.tau),
                                    static_cast<int>(run.p_k.size()));
  double p_suc = 1.0;
  for (int k = 0; k < counted; ++k) p_suc *= run.p_k[static_cast<std::size_t>(k)];

  return ProtocolResult{std::move(run.trace), std::move(run.p_k), p_suc, peak, counted, run.worst};
}

std::vector<double> success_probability_trace(const ChainConfig& config, double tau, int k_max) {
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
  if (!(tau > 0.0)) throw ConfigError("measurement interval tau must be positive");
  const Propagator step = make_propagator(config, tau);
  const int d = config.dim();
  Operator rho = Operator::Zero(d, d);
  rho(basis::site(1), basis::site(1)) = 1.0;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    rho = step.apply(rho);
    const double p = project_channel_vacuum(rho).real();
    if (!(p >= kMinSuccessProbability)) throw ZeroProbabilityError(static_cast<std::size_t>(k), p);
    rho /= p;
    out.push_back(p);
  }
  return out;
}

}  // namespace spinrelay
