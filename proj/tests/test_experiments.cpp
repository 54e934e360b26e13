#include <doctest.h>

#include <complex>
#include <numbers>

#include "spinrelay/analytics.hpp"
#include "spinrelay/errors.hpp"
#include "spinrelay/experiments.hpp"

using namespace spinrelay;
constexpr double pi = std::numbers::pi;

TEST_CASE("grid defaults") {
  const ChainConfig config = ChainConfig::uniform(12, 0.05, 0.0);
  CHECK(default_t_max(config) == doctest::Approx(2.5 * 200 * pi));
  const int n = default_n_points(config, default_t_max(config));
  CHECK(default_t_max(config) / (n - 1) <= 200 * pi / 400 + 1e-12);

  const std::vector<double> g = experiment_grid(100.0, 11, 0.0);
  CHECK(g.size() == 11);
  CHECK(g.back() == doctest::Approx(100.0));

  const std::vector<double> m = experiment_grid(1000.0, 101, 15.0);
  for (int k = 1; k * 15.0 <= 1000.0; ++k) {
    const double target = 15.0 * k;
    CHECK(std::any_of(m.begin(), m.end(), [&](double t) { return std::abs(t - target) < 1e-9; }));
  }
  CHECK(m[1] - m[0] <= 10.0 + 1e-12);
}

TEST_CASE("default sweep grids") {
  const std::vector<double> taus = default_tau_grid();
  CHECK(taus.front() == 1.0);
  CHECK(taus.back() == 160.0);
  CHECK(taus.size() == 160);
  for (std::size_t i = 1; i < taus.size(); ++i) CHECK(taus[i] - taus[i - 1] <= pi / 2);
  CHECK(default_gamma_grid().size() == 21);
  CHECK(default_length_grid() == std::vector<int>{6, 8, 10, 12});
}

TEST_CASE("sweeps are canonical and independent of execution mode") {
  const ChainConfig config = ChainConfig::uniform(8, 0.05, 0.02);
  const std::vector<double> taus{60.0, 20.0, 2.0, 40.0};
  SweepSettings serial;
  serial.execution = Execution::serial;
  SweepSettings parallel;
  parallel.execution = Execution::parallel;
  const std::vector<SweepRecord> a = sweep_tau(config, taus, serial);
  const std::vector<SweepRecord> b = sweep_tau(config, taus, parallel);
  REQUIRE(a.size() == 4);
  CHECK(a[0].tau == 2.0);
  CHECK(a[3].tau == 60.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].f_av_m == b[i].f_av_m);
    CHECK(a[i].t_m == b[i].t_m);
    CHECK(a[i].p_suc == b[i].p_suc);
    CHECK(a[i].swept_name == "tau");
  }

  const std::vector<double> gammas{0.04, 0.0};
  const std::vector<SweepRecord> g = sweep_gamma(config, gammas, 0.0, serial);
  CHECK(g[0].gamma == 0.0);
  CHECK(*g[0].f_av_m > *g[1].f_av_m);
}

TEST_CASE("length sweep orders by decreasing quality") {
  const std::vector<int> lengths{8, 6};
  const std::vector<SweepRecord> r = sweep_length(lengths, 0.05, 0.04, 150.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0].n == 6);
  CHECK(r[0].swept_name == "n");
  CHECK(*r[0].p_suc >= *r[1].p_suc);
  const std::vector<int> odd{7};
  CHECK_THROWS_AS(sweep_length(odd, 0.05, 0.04, 150.0), ConfigError);
}

TEST_CASE("figure presets") {
  SweepSettings quick;
  quick.n_points = 400;
  const std::vector<FigureTable> fig2 = figure_preset(2, quick);
  int traces = 0;
  for (const FigureTable& t : fig2) traces += std::holds_alternative<FidelityTrace>(t.data);
  CHECK(traces == 4);
  const std::vector<FigureTable> fig7 = figure_preset(7, quick);
  REQUIRE(fig7.size() == 2);
  CHECK(fig7[0].name == "fig7_n6");
  CHECK(fig7[1].name == "fig7_n12");
  for (const auto& t : fig7) {
    for (const SweepRecord& r : std::get<std::vector<SweepRecord>>(t.data)) CHECK(r.tau == 150.0);
  }
  CHECK_THROWS_AS(figure_preset(1, quick), ConfigError);
  CHECK_THROWS_AS(figure_preset(9, quick), ConfigError);
}

// Informative: the success-probability resonances in tau are set by the
// lowest channel mode, not by the four-spin oscillation frequency.
TEST_CASE("success probability resonances follow the lowest channel mode") {
  const ChainConfig config = ChainConfig::uniform(12, 0.05, 0.0);
  std::vector<double> p;
  std::vector<double> taus;
  for (double tau = 20.0; tau <= 160.0 + 1e-9; tau += 0.5) {
    taus.push_back(tau);
    p.push_back(success_probability_trace(config, tau, 1)[0]);
  }
  const Eigen::VectorXd modes = channel_mode_energies(config);
  const double lowest = modes.cwiseAbs().minCoeff();
  const double n = static_cast<double>(p.size());
  double mean = 0.0;
  for (double v : p) mean += v / n;
  double best_power = 0.0;
  double best_period = 0.0;
  for (double period = 3.0; period <= 70.0; period += 0.05) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      acc += (p[i] - mean) * std::exp(std::complex<double>(0.0, -2 * pi * taus[i] / period));
    if (std::norm(acc) > best_power) {
      best_power = std::norm(acc);
      best_period = period;
    }
  }
  MESSAGE("dominant period of p(1) vs tau: " << best_period << ", lowest mode period: " << 2 * pi / lowest);
  CHECK(best_period == doctest::Approx(2 * pi / lowest).epsilon(0.1));
}
