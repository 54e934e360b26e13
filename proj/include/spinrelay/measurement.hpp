#pragma once

#include <utility>
#include <vector>

#include "spinrelay/core.hpp"

namespace spinrelay {

/// Global channel measurements at k * tau for k = 1 ... floor(t_max / tau).
struct MeasurementSchedule {
  double tau = 0.0;
  double t_max = 0.0;
  /// Whether a measurement that lands exactly on t_max is performed.
  bool measure_at_end = true;

  void validate() const;
  std::vector<double> times() const;
};

/// Probability below which a post-selected branch counts as dead.
inline constexpr double kMinSuccessProbability = 1e-14;

/// Applies M0 = |0_ch><0_ch| in place (zeroes rows/columns of the channel sites
/// 2..N-1) and returns the trace of the projected operator.
Complex project_channel_vacuum(Eigen::Ref<Operator> op);

/// Successful channel measurement: returns the renormalized post-measurement
/// state and the success probability. Throws ZeroProbabilityError when the
/// probability is below kMinSuccessProbability.
std::pair<DensityMatrix, double> channel_projector_apply(const DensityMatrix& rho,
                                                         const ChainConfig& config);

}  // namespace spinrelay
