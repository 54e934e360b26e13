#include "spinrelay/measurement.hpp"

#include <cmath>
#include <string>

#include "spinrelay/errors.hpp"

namespace spinrelay {

void MeasurementSchedule::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("measurement interval tau must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("protocol horizon must be non-negative");
}

std::vector<double> MeasurementSchedule::times() const {
  validate();
  std::vector<double> out;
  const double slack = 1e-9 * std::max(1.0, tau);
  for (long k = 1;; ++k) {
    const double t = static_cast<double>(k) * tau;
    if (t > t_max + slack) break;
    if (!measure_at_end && std::abs(t - t_max) <= slack) break;
    out.push_back(t);
  }
  return out;
}

Complex project_channel_vacuum(Eigen::Ref<Operator> op) {
  const Eigen::Index d = op.rows();
  if (op.cols() != d || d < 5) throw DimensionError("sector operator must be square with N >= 4");
  // Channel sites are basis indices 2 .. N-1, a contiguous block.
  const Eigen::Index n = d - 1;
  op.middleRows(2, n - 2).setZero();
  op.middleCols(2, n - 2).setZero();
  return op.trace();
}

std::pair<DensityMatrix, double> channel_projector_apply(const DensityMatrix& rho,
                                                         const ChainConfig& config) {
  if (rho.dim() != config.dim()) throw DimensionError("density matrix does not match chain");
  Operator projected = rho.matrix();
  const double p = project_channel_vacuum(projected).real();
  if (!(p >= kMinSuccessProbability)) throw ZeroProbabilityError(0, p);
  projected /= p;
  return {DensityMatrix(std::move(projected)), p};
}

}  // namespace spinrelay
