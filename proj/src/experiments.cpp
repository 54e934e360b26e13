#include "spinrelay/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spinrelay/analytics.hpp"
#include "spinrelay/errors.hpp"
#include "spinrelay/parallel.hpp"

namespace spinrelay {

const char* to_string(RecordStatus status) noexcept {
  switch (status) {
    case RecordStatus::ok: return "ok";
    case RecordStatus::no_peak: return "no_peak";
    case RecordStatus::zero_probability: return "zero_probability";
  }
  return "ok";
}

double default_t_max(const ChainConfig& config) { return 2.5 * effective_model(config).t_m_eff; }

int default_n_points(const ChainConfig& config, double t_max) {
  const double spacing = effective_model(config).t_m_eff / 400.0;
  return std::max(100, static_cast<int>(std::ceil(t_max / spacing - 1e-9)) + 1);
}

std::vector<double> experiment_grid(double t_max, int n_points, double tau) {
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (n_points < 2) throw ConfigError("grid needs at least 2 points");
  if (tau < 0.0) throw ConfigError("tau must be non-negative");
  double step = t_max / (n_points - 1);
  if (tau > 0.0) {
    const double per_interval = std::max(1.0, std::ceil(tau / step - 1e-9));
    step = tau / per_interval;
  }
  const auto count = static_cast<long>(std::floor(t_max / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) grid.push_back(static_cast<double>(i) * step);
  return grid;
}

FidelityTrace trace_experiment(const ChainConfig& config, std::optional<double> tau, double t_max,
                               int n_points) {
  if (n_points < 100) throw ConfigError("trace needs at least 100 points");
  const double tau_value = tau.value_or(0.0);
  const std::vector<double> grid = experiment_grid(t_max, n_points, tau_value);
  if (tau_value > 0.0) {
    return transfer_fidelities(config, grid, MeasurementSchedule{tau_value, t_max, true});
  }
  return transfer_fidelities(config, grid);
}

SweepRecord run_point(const ChainConfig& config, double tau, const SweepSettings& settings,
                      const std::string& swept_name, double swept_value) {
  SweepRecord rec;
  rec.swept_name = swept_name;
  rec.swept_value = swept_value;
  rec.n = config.n_total();
  rec.j_boundary = config.j_boundary();
  rec.gamma = config.gamma();
  rec.tau = tau;

  const double t_max = settings.t_max > 0.0 ? settings.t_max : default_t_max(config);
  const int n_points = settings.n_points > 0 ? settings.n_points : default_n_points(config, t_max);
  const std::vector<double> grid = experiment_grid(t_max, n_points, tau);

  auto fill = [&rec](const FidelityTrace& trace, const PeakResult& peak) {
    rec.f_exc_m = trace.f_exc()[peak.index];
    rec.f_coh_m = trace.f_coh()[peak.index];
    rec.f_av_m = trace.f_av()[peak.index];
    rec.t_m = peak.t_m;
  };

  try {
    if (tau > 0.0) {
      const ProtocolResult result = run_protocol(config, MeasurementSchedule{tau, t_max, true}, grid, settings.peak);
      fill(result.trace, result.peak);
      rec.p_suc = result.p_suc;
      rec.n_measurements = result.n_measurements;
      rec.integrity = result.worst;
    } else {
      const TransferRun run = run_transfer(config, grid);
      const PeakResult peak = find_first_peak(run.trace, settings.peak);
      fill(run.trace, peak);
      rec.p_suc = 1.0;
      rec.n_measurements = 0;
      rec.integrity = run.worst;
    }
    rec.status = RecordStatus::ok;
  } catch (const NoPeakError&) {
    rec = SweepRecord{rec.swept_name, rec.swept_value, rec.n, rec.j_boundary, rec.gamma, rec.tau,
                      {}, {}, {}, {}, {}, {}, RecordStatus::no_peak, {}};
  } catch (const ZeroProbabilityError&) {
    rec = SweepRecord{rec.swept_name, rec.swept_value, rec.n, rec.j_boundary, rec.gamma, rec.tau,
                      {}, {}, {}, {}, {}, {}, RecordStatus::zero_probability, {}};
  }
  return rec;
}

namespace {

template <typename T>
std::vector<T> sorted_copy(std::span<const T> values) {
  std::vector<T> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SweepRecord> sweep_tau(const ChainConfig& config, std::span<const double> taus,
                                   const SweepSettings& settings) {
  const std::vector<double> points = sorted_copy(taus);
  std::vector<SweepRecord> records(points.size());
  for_each_index(points.size(), settings.execution, [&](std::size_t i) {
    records[i] = run_point(config, points[i], settings, "tau", points[i]);
  });
  return records;
}

std::vector<SweepRecord> sweep_gamma(const ChainConfig& config, std::span<const double> gammas,
                                     double tau, const SweepSettings& settings) {
  const std::vector<double> points = sorted_copy(gammas);
  std::vector<SweepRecord> records(points.size());
  for_each_index(points.size(), settings.execution, [&](std::size_t i) {
    records[i] = run_point(config.with_gamma(points[i]), tau, settings, "gamma", points[i]);
  });
  return records;
}

std::vector<SweepRecord> sweep_length(std::span<const int> lengths, double j_boundary, double gamma,
                                      double tau, const SweepSettings& settings, DephasingSpan span) {
  const std::vector<int> points = sorted_copy(lengths);
  std::vector<SweepRecord> records(points.size());
  for_each_index(points.size(), settings.execution, [&](std::size_t i) {
    const ChainConfig config = ChainConfig::uniform(points[i], j_boundary, gamma, span);
    records[i] = run_point(config, tau, settings, "n", static_cast<double>(points[i]));
  });
  return records;
}

std::vector<double> default_tau_grid() {
  std::vector<double> out;
  for (int k = 1; k <= 160; ++k) out.push_back(static_cast<double>(k));
  return out;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) out.push_back(0.005 * k);
  return out;
}

std::vector<int> default_length_grid() { return {6, 8, 10, 12}; }

std::vector<FigureTable> figure_preset(int figure, const SweepSettings& settings, DephasingSpan span) {
  constexpr double jp = 0.05;
  const ChainConfig base = ChainConfig::uniform(12, jp, 0.0, span);
  const double t_max = settings.t_max > 0.0 ? settings.t_max : default_t_max(base);
  const int n_points = settings.n_points > 0 ? settings.n_points : default_n_points(base, t_max);
  auto label = [](double x) { return fmt::format("{:g}", x); };

  std::vector<FigureTable> tables;
  auto add_trace = [&](std::string name, const ChainConfig& config, std::optional<double> tau) {
    tables.push_back({std::move(name), trace_experiment(config, tau, t_max, n_points)});
  };

  switch (figure) {
    case 2: {
      for (double g : {0.0, 0.01, 0.02, 0.04}) {
        add_trace("fig2_trace_gamma" + label(g), base.with_gamma(g), std::nullopt);
      }
      tables.push_back({"fig2_peaks", sweep_gamma(base, default_gamma_grid(), 0.0, settings)});
      break;
    }
    case 3: {
      for (double tau : {6.0, 7.0, 10.0, 20.0}) add_trace("fig3_trace_tau" + label(tau), base, tau);
      break;
    }
    case 4: {
      const std::vector<double> taus = default_tau_grid();
      for (int n : {6, 12}) {
        tables.push_back({"fig4_n" + std::to_string(n),
                          sweep_tau(ChainConfig::uniform(n, jp, 0.0, span), taus, settings)});
      }
      break;
    }
    case 5: {
      for (double g : {0.02, 0.04}) {
        add_trace("fig5_gamma" + label(g) + "_free", base.with_gamma(g), std::nullopt);
        for (double tau : {40.0, 150.0}) {
          add_trace("fig5_gamma" + label(g) + "_tau" + label(tau), base.with_gamma(g), tau);
        }
      }
      break;
    }
    case 6: {
      const std::vector<double> taus = default_tau_grid();
      for (double g : {0.02, 0.04}) {
        tables.push_back({"fig6_gamma" + label(g), sweep_tau(base.with_gamma(g), taus, settings)});
      }
      break;
    }
    case 7: {
      for (int n : {6, 12}) {
        tables.push_back({"fig7_n" + std::to_string(n),
                          sweep_gamma(ChainConfig::uniform(n, jp, 0.0, span), default_gamma_grid(), 150.0,
                                      settings)});
      }
      break;
    }
    case 8: {
      std::vector<int> lengths;
      for (int n = 6; n <= 20; n += 2) lengths.push_back(n);
      for (double g : {0.02, 0.04}) {
        tables.push_back({"fig8_gamma" + label(g), sweep_length(lengths, jp, g, 150.0, settings, span)});
      }
      break;
    }
    default:
      throw ConfigError("figure must be one of 2..8, got " + std::to_string(figure));
  }
  return tables;
}

}  // namespace spinrelay
