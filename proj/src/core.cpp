#include "spinrelay/core.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <string>

#include "spinrelay/errors.hpp"

namespace spinrelay {

ChainConfig::ChainConfig(int n_total, double j_channel, double j_boundary, double gamma,
                         std::vector<int> dephasing_sites)
    : n_total_(n_total),
      j_channel_(j_channel),
      j_boundary_(j_boundary),
      gamma_(gamma),
      dephasing_sites_(std::move(dephasing_sites)) {
  if (n_total_ < 4 || n_total_ % 2 != 0) {
    throw ConfigError("chain length must be even and at least 4, got " + std::to_string(n_total_));
  }
  if (!(j_channel_ > 0.0) || !std::isfinite(j_channel_)) {
    throw ConfigError("channel coupling must be positive");
  }
  if (!(j_boundary_ > 0.0) || !std::isfinite(j_boundary_)) {
    throw ConfigError("boundary coupling must be positive");
  }
  if (!(gamma_ >= 0.0) || !std::isfinite(gamma_)) {
    throw ConfigError("dephasing rate must be non-negative");
  }
  std::sort(dephasing_sites_.begin(), dephasing_sites_.end());
  if (std::adjacent_find(dephasing_sites_.begin(), dephasing_sites_.end()) != dephasing_sites_.end()) {
    throw ConfigError("dephasing sites must be distinct");
  }
  dephased_mask_.assign(static_cast<std::size_t>(n_total_ + 1), 0);
  for (int site : dephasing_sites_) {
    if (site < 2 || site > n_total_ - 1) {
      throw ConfigError("dephasing site " + std::to_string(site) + " is outside the channel 2.." +
                        std::to_string(n_total_ - 1));
    }
    dephased_mask_[static_cast<std::size_t>(site)] = 1;
  }
}

ChainConfig ChainConfig::uniform(int n_total, double j_boundary, double gamma, DephasingSpan span) {
  std::vector<int> sites;
  const int upper = span == DephasingSpan::channel ? n_total - 1 : n_total - 2;
  for (int k = 2; k <= upper; ++k) sites.push_back(k);
  return ChainConfig(n_total, 1.0, j_boundary, gamma, std::move(sites));
}

bool ChainConfig::is_dephased(int site) const noexcept {
  return site >= 0 && site <= n_total_ && dephased_mask_[static_cast<std::size_t>(site)] != 0;
}

ChainConfig ChainConfig::with_gamma(double gamma) const {
  return ChainConfig(n_total_, j_channel_, j_boundary_, gamma, dephasing_sites_);
}

Eigen::Vector2cd SenderState::ket() const {
  Eigen::Vector2cd psi;
  psi(0) = std::cos(theta / 2.0);
  psi(1) = std::polar(std::sin(theta / 2.0), phi);
  return psi;
}

void StateDeviation::merge(const StateDeviation& other) {
  hermiticity = std::max(hermiticity, other.hermiticity);
  trace = std::max(trace, other.trace);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
}

bool StateDeviation::acceptable() const noexcept {
  return hermiticity <= kHermiticityTol && trace <= kTraceTol && min_eigenvalue >= -kPsdTol;
}

StateDeviation measure_state(const Operator& rho) {
  StateDeviation dev;
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  dev.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  dev.trace = std::abs(rho.trace() - Complex(1.0, 0.0));
  const Operator hermitian_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part, Eigen::EigenvaluesOnly);
  dev.min_eigenvalue = solver.eigenvalues().minCoeff();
  return dev;
}

DensityMatrix::DensityMatrix(Operator entries) : entries_(std::move(entries)) {
  const StateDeviation dev = measure_state(entries_);
  if (!dev.acceptable()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "not a density matrix: hermiticity %.3e, trace error %.3e, min eigenvalue %.3e",
                  dev.hermiticity, dev.trace, dev.min_eigenvalue);
    throw InvalidStateError(buf);
  }
}

DensityMatrix initial_state(const ChainConfig& config, const SenderState& sender) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(config.dim());
  const Eigen::Vector2cd qubit = sender.ket();
  psi(basis::vacuum) = qubit(0);
  psi(basis::site(1)) = qubit(1);
  return DensityMatrix(psi * psi.adjoint());
}

Eigen::Matrix2cd receiver_block(const Operator& op) {
  if (op.rows() != op.cols() || op.rows() < 5) {
    throw DimensionError("sector operator must be square with dimension N+1 >= 5");
  }
  const int n = static_cast<int>(op.rows()) - 1;
  Eigen::Matrix2cd out;
  out(1, 1) = op(n, n);
  out(0, 0) = op.trace() - op(n, n);
  out(0, 1) = op(basis::vacuum, n);
  out(1, 0) = op(n, basis::vacuum);
  return out;
}

Eigen::Matrix2cd receiver_reduced_state(const DensityMatrix& rho, const ChainConfig& config) {
  if (rho.dim() != config.dim()) {
    throw DimensionError("density matrix dimension " + std::to_string(rho.dim()) +
                         " does not match chain dimension " + std::to_string(config.dim()));
  }
  return receiver_block(rho.matrix());
}

}  // namespace spinrelay
