#include "spinrelay/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "spinrelay/errors.hpp"

namespace spinrelay {

const char* to_string(RecordKind kind) noexcept {
  switch (kind) {
    case RecordKind::regular: return "regular";
    case RecordKind::pre_measurement: return "pre";
    case RecordKind::post_measurement: return "post";
  }
  return "regular";
}

double average_fidelity(double f_exc, double f_coh) noexcept {
  return 0.5 + f_exc / 6.0 + f_coh / 3.0;
}

FidelityTrace::FidelityTrace(ChainConfig config, double tau) : config_(std::move(config)), tau_(tau) {}

void FidelityTrace::append(double t, double f_exc, double f_coh, RecordKind kind) {
  if (!times_.empty()) {
    const double last = times_.back();
    const bool jump_pair = t == last && kinds_.back() == RecordKind::pre_measurement &&
                           kind == RecordKind::post_measurement;
    if (!(t > last) && !jump_pair) {
      throw ConfigError("trace times must increase (got " + std::to_string(t) + " after " +
                        std::to_string(last) + ")");
    }
  }
  times_.push_back(t);
  f_exc_.push_back(f_exc);
  f_coh_.push_back(f_coh);
  f_av_.push_back(average_fidelity(f_exc, f_coh));
  kinds_.push_back(kind);
}

PeakResult find_first_peak(const FidelityTrace& trace, const PeakOptions& options) {
  if (trace.size() < 3) throw ConfigError("peak search needs at least 3 samples");
  const auto& f = trace.f_av();
  const auto& kinds = trace.kinds();
  const auto& t = trace.times();

  std::vector<std::size_t> usable;
  usable.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (kinds[i] != RecordKind::pre_measurement) usable.push_back(i);
  }

  std::size_t best_pos = 0;  // position within `usable`
  std::optional<std::size_t> found;
  for (std::size_t pos = 0; pos < usable.size(); ++pos) {
    const double value = f[usable[pos]];
    if (value > f[usable[best_pos]]) best_pos = pos;
    const double top = f[usable[best_pos]];
    if (top - value >= options.prominence && top > f[usable.front()] + options.min_rise) {
      found = best_pos;
      break;
    }
  }
  if (!found) throw NoPeakError("fidelity has no confirmed peak before t = " + std::to_string(t.back()));

  const std::size_t pos = *found;
  PeakResult peak{t[usable[pos]], f[usable[pos]], usable[pos]};
  if (pos == 0 || pos + 1 >= usable.size()) return peak;

  // A post-measurement record starts a new smooth segment.
  const std::size_t prev = usable[pos - 1], mid = usable[pos], next = usable[pos + 1];
  if (kinds[mid] == RecordKind::post_measurement || kinds[next] == RecordKind::post_measurement) return peak;

  const double x0 = t[prev], x1 = t[mid], x2 = t[next];
  const double y0 = f[prev], y1 = f[mid], y2 = f[next];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature < 0.0) {
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    peak.t_m = std::clamp(vertex, x0, x2);
  }
  return peak;
}

namespace {

class PropagatorCache {
 public:
  explicit PropagatorCache(const ChainConfig& config) : generator_(build_generator(config)) {}

  const Propagator& get(double dt) {
    const double tol = 1e-12 * std::max(1.0, dt);
    for (const Propagator& p : cache_) {
      if (std::abs(p.duration() - dt) <= tol) return p;
    }
    cache_.push_back(make_propagator(generator_, dt));
    return cache_.back();
  }

 private:
  Generator generator_;
  std::deque<Propagator> cache_;
};

void check_grid(std::span<const double> times) {
  if (times.empty()) throw ConfigError("time grid is empty");
  if (times.front() != 0.0) throw ConfigError("time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("time grid must be strictly increasing");
  }
}

}  // namespace

TransferRun run_transfer(const ChainConfig& config, std::span<const double> times,
                         const std::optional<MeasurementSchedule>& schedule) {
  check_grid(times);
  const int d = config.dim();
  const int n = config.n_total();
  const Eigen::Index receiver_pop = n + static_cast<Eigen::Index>(d) * n;          // (N, N)
  const Eigen::Index receiver_coh = basis::vacuum + static_cast<Eigen::Index>(d) * n;  // (vac, N)

  TransferRun run{FidelityTrace(config, schedule ? schedule->tau : 0.0), {}, {}, {}};
  if (schedule) run.measurement_times = schedule->times();
  const std::vector<double>& meas = run.measurement_times;
  const double slack = schedule ? 1e-9 * std::max(1.0, schedule->tau) : 0.0;

  Eigen::VectorXcd excitation = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
  Eigen::VectorXcd coherence = excitation;
  excitation(basis::site(1) + static_cast<Eigen::Index>(d) * basis::site(1)) = 1.0;
  coherence(basis::vacuum + static_cast<Eigen::Index>(d) * basis::site(1)) = 1.0;
  Eigen::VectorXcd scratch(excitation.size());

  PropagatorCache cache(config);
  double now = 0.0;

  auto check_state = [&](double at) {
    const StateDeviation dev = measure_state(Eigen::Map<const Operator>(excitation.data(), d, d));
    run.worst.merge(dev);
    if (!dev.acceptable()) {
      throw InvalidStateError("excitation branch left the state space at t = " + std::to_string(at) +
                              " (trace error " + std::to_string(dev.trace) + ", min eigenvalue " +
                              std::to_string(dev.min_eigenvalue) + ")");
    }
  };
  auto advance_to = [&](double target) {
    const double dt = target - now;
    if (dt > 0.0) {
      const Propagator& p = cache.get(dt);
      p.apply_inplace(excitation, scratch);
      p.apply_inplace(coherence, scratch);
      check_state(target);
    }
    now = target;
  };
  auto record = [&](double at, RecordKind kind) {
    run.trace.append(at, excitation(receiver_pop).real(), std::abs(coherence(receiver_coh)), kind);
  };
  auto measure = [&](double at) {
    Eigen::Map<Operator> exc(excitation.data(), d, d);
    Eigen::Map<Operator> coh(coherence.data(), d, d);
    const double p = project_channel_vacuum(exc).real();
    project_channel_vacuum(coh);
    if (!(p >= kMinSuccessProbability)) throw ZeroProbabilityError(run.p_k.size() + 1, p);
    exc /= p;
    coh /= std::sqrt(p);
    run.p_k.push_back(p);
    check_state(at);
  };

  check_state(0.0);
  std::size_t gi = 0, mi = 0;
  while (gi < times.size() || mi < meas.size()) {
    const bool have_grid = gi < times.size();
    const bool have_meas = mi < meas.size();
    if (have_grid && have_meas && std::abs(times[gi] - meas[mi]) <= slack) {
      advance_to(times[gi]);
      record(times[gi], RecordKind::pre_measurement);
      measure(times[gi]);
      record(times[gi], RecordKind::post_measurement);
      ++gi;
      ++mi;
    } else if (have_grid && (!have_meas || times[gi] < meas[mi])) {
      advance_to(times[gi]);
      record(times[gi], RecordKind::regular);
      ++gi;
    } else {
      if (meas[mi] > times.back()) break;  // nothing left to record
      advance_to(meas[mi]);
      measure(meas[mi]);
      ++mi;
    }
  }
  return run;
}

FidelityTrace transfer_fidelities(const ChainConfig& config, std::span<const double> times,
                                  const std::optional<MeasurementSchedule>& schedule) {
  return run_transfer(config, times, schedule).trace;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

SenderState haar_sample(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t stream = splitmix64(seed);
  const double u = unit_double(splitmix64(stream ^ splitmix64(2 * index)));
  const double v = unit_double(splitmix64(stream ^ splitmix64(2 * index + 1)));
  const double cos_theta = 1.0 - 2.0 * u;
  return {std::acos(std::clamp(cos_theta, -1.0, 1.0)), 2.0 * std::numbers::pi * v};
}

double input_fidelity(const Propagator& propagator, const SenderState& sender) {
  const int d = propagator.dim();
  const Eigen::Vector2cd qubit = sender.ket();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(basis::vacuum) = qubit(0);
  psi(basis::site(1)) = qubit(1);
  const Operator rho_t = propagator.apply(Operator(psi * psi.adjoint()));
  Eigen::Matrix2cd rho_n = receiver_block(rho_t);

  // Local phase correction at the receiver, the same one implied by |C(vac, N)|.
  Operator coherence = Operator::Zero(d, d);
  coherence(basis::vacuum, basis::site(1)) = 1.0;
  const Complex c = receiver_block(propagator.apply(coherence))(0, 1);
  const Complex phase = std::abs(c) > 0.0 ? c / std::abs(c) : Complex(1.0);
  rho_n(0, 1) *= std::conj(phase);
  rho_n(1, 0) *= phase;
  return (qubit.adjoint() * rho_n * qubit)(0, 0).real();
}

McEstimate haar_average_mc(const ChainConfig& config, double t, int n_samples, std::uint64_t seed,
                           Execution execution) {
  if (n_samples < 100) throw ConfigError("Monte Carlo average needs at least 100 samples");
  if (!(t >= 0.0)) throw ConfigError("time must be non-negative");
  const Propagator propagator = make_propagator(config, t);

  std::vector<double> values(static_cast<std::size_t>(n_samples));
  const bool parallel = execution == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n_samples; ++i) {
    values[static_cast<std::size_t>(i)] =
        input_fidelity(propagator, haar_sample(seed, static_cast<std::uint64_t>(i)));
  }

  // Fixed summation order keeps the estimate independent of the worker count.
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n_samples;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = sq / (n_samples - 1);
  return {mean, std::sqrt(variance / n_samples)};
}

}  // namespace spinrelay
