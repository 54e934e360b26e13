#include "spinrelay/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spinrelay/analytics.hpp"
#include "spinrelay/errors.hpp"
#include "spinrelay/experiments.hpp"
#include "spinrelay/io.hpp"
#include "spinrelay/oracle_suite.hpp"

#ifndef SPINRELAY_VERSION
#define SPINRELAY_VERSION "dev"
#endif

namespace spinrelay {
namespace {

namespace fs = std::filesystem;

constexpr const char* kFooter = R"(Units: J = 1 (hbar = 1); times in 1/J, rates and couplings in units of J.

CSV columns (UTF-8, ',' separated, 12 significant digits):
  trace, --trace-out:           t,kind,f_exc,f_coh,f_av   (kind: regular|pre|post)
  protocol, sweep-*, figure:    swept_name,swept_value,n,j_boundary,gamma,tau,
                                f_exc_m,f_coh_m,f_av_m,t_m,p_suc,n_measurements,status
  Peak fields are empty when status is no_peak or zero_probability.
Every file written with --out gets a <file>.manifest.json sidecar.
Set SPINRELAY_THREADS to cap the number of worker threads.)";

struct Options {
  int n = 12;
  double j_boundary = 0.05;
  double gamma = 0.0;
  double tau = 0.0;
  double t_max = 0.0;
  int points = 0;
  int dephasing_upper = 0;
  std::uint64_t seed = 42;
  double prominence = 0.03;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const auto& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ',';
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      s += io::format_number(v);
    } else {
      s += std::to_string(v);
    }
  }
  return s;
}

DephasingSpan span_for(const Options& o, int n) {
  if (o.dephasing_upper == 0 || o.dephasing_upper == n - 1) return DephasingSpan::channel;
  if (o.dephasing_upper == n - 2) return DephasingSpan::inner;
  throw UsageError("--dephasing-upper must be N-1 (" + std::to_string(n - 1) + ") or N-2 (" +
                   std::to_string(n - 2) + "), got " + std::to_string(o.dephasing_upper));
}

ChainConfig make_config(const Options& o) {
  try {
    return ChainConfig::uniform(o.n, o.j_boundary, o.gamma, span_for(o, o.n));
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--n/--j-boundary/--gamma: ") + e.what());
  }
}

SweepSettings make_settings(const Options& o) {
  SweepSettings s;
  s.t_max = o.t_max;
  s.n_points = o.points;
  s.peak.prominence = o.prominence;
  return s;
}

io::RunManifest make_manifest(const std::string& command, const Options& o) {
  io::RunManifest m;
  m.command = command;
  m.artifact_version = SPINRELAY_VERSION;
  m.timestamp = io::utc_timestamp();
  m.seed = o.seed;
  m.parameters["n"] = std::int64_t{o.n};
  m.parameters["j_boundary"] = o.j_boundary;
  m.parameters["gamma"] = o.gamma;
  m.parameters["tau"] = o.tau;
  m.parameters["t_max"] = o.t_max;
  m.parameters["points"] = std::int64_t{o.points};
  m.parameters["dephasing_upper"] = std::int64_t{o.dephasing_upper};
  m.parameters["peak_prominence"] = o.prominence;
  return m;
}

template <typename Writer>
void emit(const Options& o, const io::RunManifest& manifest, std::ostream& out, Writer&& write) {
  if (o.out.empty()) {
    write(out);
    return;
  }
  const fs::path path(o.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write(os);
  io::write_manifest(io::manifest_path_for(path), manifest);
}

void add_physics_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--n", o.n, "Total number of spins N (even, >= 4)")->check(CLI::Range(4, 64));
  cmd.add_option("--j-boundary", o.j_boundary, "Sender/receiver coupling J'")->check(CLI::PositiveNumber);
  cmd.add_option("--gamma", o.gamma, "Dephasing rate")->check(CLI::NonNegativeNumber);
  cmd.add_option("--tau", o.tau, "Measurement interval (0 disables measurements)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--t-max", o.t_max, "Time horizon (default 2.5 pi/(2|J_e|))")->check(CLI::NonNegativeNumber);
  cmd.add_option("--points", o.points, "Grid points (default: spacing <= t_m/400)")->check(CLI::Range(0, 10'000'000));
  cmd.add_option("--dephasing-upper", o.dephasing_upper, "Last dephased site: N-1 (default) or N-2")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--seed", o.seed, "Random seed recorded in the manifest");
  cmd.add_option("--peak-prominence", o.prominence, "Drop that confirms the first fidelity peak")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out, "Output file (directory for `figure`); stdout if omitted");
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  const ChainConfig config = make_config(o);
  const double t_max = o.t_max > 0.0 ? o.t_max : default_t_max(config);
  const int points = o.points > 0 ? o.points : default_n_points(config, t_max);
  if (points < 100) throw UsageError("--points must be at least 100, got " + std::to_string(points));
  const FidelityTrace trace =
      trace_experiment(config, o.tau > 0.0 ? std::optional<double>(o.tau) : std::nullopt, t_max, points);
  emit(o, make_manifest("trace", o), out, [&](std::ostream& os) { io::write_trace_csv(os, trace); });
  try {
    PeakOptions peak;
    peak.prominence = o.prominence;
    const PeakResult p = find_first_peak(trace, peak);
    err << fmt::format("# first peak: t_m = {:.6f}, F_av = {:.6f}\n", p.t_m, p.f_m);
  } catch (const NoPeakError&) {
    err << "# no fidelity peak within the trace\n";
  }
  return kExitOk;
}

int cmd_protocol(const Options& o, const std::string& trace_out, std::ostream& out, std::ostream& err) {
  if (!(o.tau > 0.0)) throw UsageError("--tau must be positive for `protocol`");
  const ChainConfig config = make_config(o);
  const SweepSettings settings = make_settings(o);
  const SweepRecord rec = run_point(config, o.tau, settings, "tau", o.tau);
  io::RunManifest manifest = make_manifest("protocol", o);
  emit(o, manifest, out, [&](std::ostream& os) { io::write_sweep_csv(os, std::span(&rec, 1)); });
  if (!trace_out.empty()) {
    const double t_max = o.t_max > 0.0 ? o.t_max : default_t_max(config);
    const int points = o.points > 0 ? o.points : default_n_points(config, t_max);
    const FidelityTrace trace = trace_experiment(config, o.tau, t_max, points);
    Options trace_opts = o;
    trace_opts.out = trace_out;
    emit(trace_opts, manifest, out, [&](std::ostream& os) { io::write_trace_csv(os, trace); });
  }
  if (rec.status != RecordStatus::ok) {
    err << "protocol failed: " << to_string(rec.status) << '\n';
    return kExitPhysics;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& name, const Options& o, const std::vector<SweepRecord>& records,
              io::RunManifest manifest, std::ostream& out) {
  manifest.command = name;
  emit(o, manifest, out, [&](std::ostream& os) { io::write_sweep_csv(os, records); });
  return kExitOk;
}

int cmd_figure(int figure, const Options& o, std::ostream& out) {
  const SweepSettings settings = make_settings(o);
  const DephasingSpan span = span_for(o, 12);
  const std::vector<FigureTable> tables = figure_preset(figure, settings, span);
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  fs::create_directories(dir);
  io::RunManifest manifest = make_manifest("figure", o);
  manifest.parameters["figure"] = std::int64_t{figure};
  std::string files;
  for (const FigureTable& table : tables) {
    const fs::path path = dir / (table.name + ".csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    std::visit(
        [&os](const auto& data) {
          if constexpr (std::is_same_v<std::decay_t<decltype(data)>, FidelityTrace>) {
            io::write_trace_csv(os, data);
          } else {
            io::write_sweep_csv(os, data);
          }
        },
        table.data);
    if (!files.empty()) files += ',';
    files += path.filename().string();
    out << path.string() << '\n';
  }
  manifest.parameters["files"] = files;
  io::write_manifest(dir / ("fig" + std::to_string(figure) + ".manifest.json"), manifest);
  return kExitOk;
}

int cmd_oracle(std::ostream& out) {
  bool all = true;
  for (const OracleCheck& c : run_oracle_suite()) {
    out << fmt::format("{} {}: deviation {:.3e} (tolerance {:.1e})\n", c.passed ? "PASS" : "FAIL", c.name,
                       c.deviation, c.tolerance);
    all = all && c.passed;
  }
  out << (all ? "all oracle checks passed\n" : "oracle checks FAILED\n");
  return all ? kExitOk : kExitPhysics;
}

void apply_thread_cap(std::ostream& err) {
  const char* env = std::getenv("SPINRELAY_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long threads = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || threads < 1) {
    err << "ignoring SPINRELAY_THREADS='" << env << "' (expected a positive integer)\n";
    return;
  }
  omp_set_num_threads(static_cast<int>(threads));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-assisted state transfer through a dephasing spin channel"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_version_flag("--version", SPINRELAY_VERSION);

  Options o;
  std::string trace_out;
  std::vector<double> taus = default_tau_grid();
  std::vector<double> gammas = default_gamma_grid();
  std::vector<int> lengths = default_length_grid();
  int figure = 0;

  auto* trace = app.add_subcommand("trace", "Fidelities versus time (with measurements if --tau > 0)");
  add_physics_options(*trace, o);
  auto* protocol = app.add_subcommand("protocol", "Single measured run: peak fidelity and success probability");
  add_physics_options(*protocol, o);
  protocol->add_option("--trace-out", trace_out, "Also write the conditioned fidelity trace here");
  auto* sweep_tau_cmd = app.add_subcommand("sweep-tau", "Sweep the measurement interval");
  add_physics_options(*sweep_tau_cmd, o);
  sweep_tau_cmd->add_option("--taus", taus, "Comma-separated intervals (default 1,2,...,160)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  auto* sweep_gamma_cmd = app.add_subcommand("sweep-gamma", "Sweep the dephasing rate at fixed --tau");
  add_physics_options(*sweep_gamma_cmd, o);
  sweep_gamma_cmd->add_option("--gammas", gammas, "Comma-separated rates (default 0,0.005,...,0.1)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  auto* sweep_n_cmd = app.add_subcommand("sweep-n", "Sweep the chain length at fixed --gamma and --tau");
  add_physics_options(*sweep_n_cmd, o);
  sweep_n_cmd->add_option("--lengths", lengths, "Comma-separated even lengths (default 6,8,10,12)")
      ->delimiter(',')
      ->check(CLI::Range(4, 64));
  auto* figure_cmd = app.add_subcommand("figure", "Regenerate the data behind one figure (2-8)");
  add_physics_options(*figure_cmd, o);
  figure_cmd->add_option("id", figure, "Figure number")->required()->check(CLI::Range(2, 8));
  auto* oracle = app.add_subcommand("oracle", "Run the independent cross-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SPINRELAY_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  apply_thread_cap(err);
  try {
    if (*trace) return cmd_trace(o, out, err);
    if (*protocol) return cmd_protocol(o, trace_out, out, err);
    if (*sweep_tau_cmd) {
      const ChainConfig config = make_config(o);
      io::RunManifest m = make_manifest("sweep-tau", o);
      m.parameters["taus"] = join(taus);
      return cmd_sweep("sweep-tau", o, sweep_tau(config, taus, make_settings(o)), m, out);
    }
    if (*sweep_gamma_cmd) {
      const ChainConfig config = make_config(o);
      io::RunManifest m = make_manifest("sweep-gamma", o);
      m.parameters["gammas"] = join(gammas);
      return cmd_sweep("sweep-gamma", o, sweep_gamma(config, gammas, o.tau, make_settings(o)), m, out);
    }
    if (*sweep_n_cmd) {
      for (int n : lengths) {
        if (n % 2 != 0) throw UsageError("--lengths: chain length must be even, got " + std::to_string(n));
        span_for(o, n);
      }
      const DephasingSpan span = o.dephasing_upper == 0 ? DephasingSpan::channel : span_for(o, lengths.front());
      io::RunManifest m = make_manifest("sweep-n", o);
      m.parameters["lengths"] = join(lengths);
      return cmd_sweep("sweep-n", o, sweep_length(lengths, o.j_boundary, o.gamma, o.tau, make_settings(o), span),
                       m, out);
    }
    if (*figure_cmd) return cmd_figure(figure, o, out);
    if (*oracle) return cmd_oracle(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ZeroProbabilityError& e) {
    err << "physics error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const NoPeakError& e) {
    err << "physics error: " << e.what() << '\n';
    return kExitPhysics;
  }
  return kExitUsage;
}

}  // namespace spinrelay
