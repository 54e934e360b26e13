#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spinrelay/fidelity.hpp"
#include "spinrelay/protocol.hpp"

namespace spinrelay {

struct SweepSettings {
  double t_max = 0.0;  // 0: 2.5 * t_m_eff
  int n_points = 0;    // 0: grid spacing at most t_m_eff / 400
  PeakOptions peak{};
  Execution execution = Execution::parallel;
};

enum class RecordStatus { ok, no_peak, zero_probability };
const char* to_string(RecordStatus status) noexcept;

/// One point of a parameter sweep. Peak quantities are empty unless status is ok.
struct SweepRecord {
  std::string swept_name;  // "tau", "gamma" or "n"
  double swept_value = 0.0;
  int n = 0;
  double j_boundary = 0.0;
  double gamma = 0.0;
  double tau = 0.0;  // 0: no measurement
  std::optional<double> f_exc_m;
  std::optional<double> f_coh_m;
  std::optional<double> f_av_m;
  std::optional<double> t_m;
  std::optional<double> p_suc;
  std::optional<int> n_measurements;
  RecordStatus status = RecordStatus::ok;
  /// Worst excitation-branch deviation along the run (diagnostic, not serialized).
  StateDeviation integrity;
};

double default_t_max(const ChainConfig& config);
int default_n_points(const ChainConfig& config, double t_max);

/// Uniform grid on [0, t_max]. With tau > 0 the spacing is shrunk to tau / m so
/// that every measurement time k * tau is a grid point.
std::vector<double> experiment_grid(double t_max, int n_points, double tau = 0.0);

/// Fidelity trace with (tau > 0) or without measurements.
FidelityTrace trace_experiment(const ChainConfig& config, std::optional<double> tau, double t_max,
                               int n_points);

/// Single protocol (tau > 0) or free-evolution (tau == 0) point.
SweepRecord run_point(const ChainConfig& config, double tau, const SweepSettings& settings,
                      const std::string& swept_name, double swept_value);

std::vector<SweepRecord> sweep_tau(const ChainConfig& config, std::span<const double> taus,
                                   const SweepSettings& settings = {});
std::vector<SweepRecord> sweep_gamma(const ChainConfig& config, std::span<const double> gammas,
                                     double tau, const SweepSettings& settings = {});
std::vector<SweepRecord> sweep_length(std::span<const int> lengths, double j_boundary, double gamma,
                                      double tau, const SweepSettings& settings = {},
                                      DephasingSpan span = DephasingSpan::channel);

/// 1, 2, ..., 160: spacing below pi/(2J) resolves the single-measurement oscillation.
std::vector<double> default_tau_grid();
std::vector<double> default_gamma_grid();  // 0, 0.005, ..., 0.1
std::vector<int> default_length_grid();    // 6, 8, 10, 12

/// One CSV worth of figure data.
struct FigureTable {
  std::string name;
  std::variant<std::vector<SweepRecord>, FidelityTrace> data;
};

/// Data behind figures 2-8 at J' = 0.05.
std::vector<FigureTable> figure_preset(int figure, const SweepSettings& settings = {},
                                       DephasingSpan span = DephasingSpan::channel);

}  // namespace spinrelay
