#include "spinrelay/analytics.hpp"

#include <cmath>
#include <numbers>

#include "spinrelay/errors.hpp"

namespace spinrelay {
namespace {

void require_four_spins(const ChainConfig& config) {
  if (config.n_total() != 4) throw ConfigError("four-spin solution needs N = 4");
}

}  // namespace

EffectiveModel effective_model(const ChainConfig& config) {
  const double jp = config.j_boundary();
  const double j = config.j_channel();
  EffectiveModel model;
  const double sign = (config.n_total() / 2) % 2 == 0 ? 1.0 : -1.0;
  model.j_eff = sign * jp * jp / j;
  model.t_m_eff = std::numbers::pi / (2.0 * std::abs(model.j_eff));
  model.validity_ratio = jp * config.n_total() / (std::numbers::pi * j);
  model.weak = model.validity_ratio >= 0.5;
  return model;
}

double effective_average_fidelity(double j_eff, double t) noexcept {
  const double s = 1.0 + std::abs(std::sin(j_eff * t));
  return 1.0 / 3.0 + s * s / 6.0;
}

double four_spin_alpha(const ChainConfig& config) noexcept {
  const double j = config.j_channel();
  const double jp = config.j_boundary();
  return (j + std::sqrt(j * j + 4.0 * jp * jp)) / (2.0 * jp);
}

FourSpinSolution four_spin_solution(const ChainConfig& config) {
  require_four_spins(config);
  const double j = config.j_channel();
  const double jp = config.j_boundary();
  const double a = four_spin_alpha(config);
  const double norm = std::sqrt(2.0 * (a * a + 1.0));

  FourSpinSolution sol;
  sol.alpha = a;
  sol.eigenvalues = {-a * jp, j - a * jp, -(j - a * jp), a * jp};
  sol.eigenvectors.col(0) << 1.0, -a, a, -1.0;
  sol.eigenvectors.col(1) << a, -1.0, -1.0, a;
  sol.eigenvectors.col(2) << a, 1.0, -1.0, -a;
  sol.eigenvectors.col(3) << 1.0, a, a, 1.0;
  sol.eigenvectors /= norm;
  return sol;
}

double four_spin_p1(const ChainConfig& config, double t) {
  require_four_spins(config);
  const double a = four_spin_alpha(config);
  const double a2 = a * a;
  const double omega = config.j_channel() - 2.0 * a * config.j_boundary();
  return (1.0 + a2 * a2 + 2.0 * a2 * std::cos(omega * t)) / ((a2 + 1.0) * (a2 + 1.0));
}

double four_spin_p1_limit(const ChainConfig& config, double t) {
  require_four_spins(config);
  const double ratio = config.j_boundary() / config.j_channel();
  const double s = std::sin(config.j_channel() * t / 2.0);
  return 1.0 - 4.0 * ratio * ratio * s * s;
}

double four_spin_p1_frequency(const ChainConfig& config) noexcept {
  return std::abs(config.j_channel() - 2.0 * four_spin_alpha(config) * config.j_boundary());
}

Eigen::VectorXd channel_mode_energies(const ChainConfig& config) {
  const int sites = config.n_total() - 2;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(sites, sites);
  for (int i = 0; i + 1 < sites; ++i) h(i, i + 1) = h(i + 1, i) = config.j_channel();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace spinrelay
