#include "spinrelay/oracle_suite.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "spinrelay/analytics.hpp"
#include "spinrelay/dynamics.hpp"
#include "spinrelay/experiments.hpp"
#include "spinrelay/fidelity.hpp"
#include "spinrelay/full_oracle.hpp"
#include "spinrelay/measurement.hpp"

namespace spinrelay {

Operator random_sector_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Operator g(dim, dim);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Operator rho = g * g.adjoint();
  return rho / rho.trace();
}

double sector_vs_full_deviation(const ChainConfig& config, double duration, int n_states,
                                std::uint64_t seed) {
  const Propagator propagator = make_propagator(config, duration);
  OracleOptions options;
  options.control.abs_tol = 1e-12;
  options.control.rel_tol = 1e-11;
  double worst = 0.0;
  for (int s = 0; s < n_states; ++s) {
    const Operator rho = random_sector_state(config.dim(), seed + static_cast<std::uint64_t>(s));
    const Operator sector = propagator.apply(rho);
    const Operator full = oracle_evolve_full(config, embed_in_full(rho, config.n_total()), duration, options);
    worst = std::max(worst, (sector - project_to_sector(full, config.n_total())).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

OracleCheck at_most(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite() {
  std::vector<OracleCheck> checks;

  for (int n : {4, 6}) {
    for (double g : {0.0, 0.02, 0.05}) {
      const ChainConfig config = ChainConfig::uniform(n, 0.05, g);
      const double t = n == 4 ? 3.0 : 10.0;
      checks.push_back(at_most(fmt::format("sector evolution vs full 2^N oracle (N={}, gamma={})", n, g),
                               sector_vs_full_deviation(config, t, 5, 1000 + n), 1e-7));
    }
  }

  {
    // Generator action equals the projected spin-operator right-hand side.
    const ChainConfig config = ChainConfig::uniform(6, 0.3, 0.07);
    const Generator gen = build_generator(config);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Operator rho = random_sector_state(config.dim(), 77 + s);
      const Operator full = full_lindblad_rhs(config, embed_in_full(rho, 6));
      worst = std::max(worst, (gen.apply(rho) - project_to_sector(full, 6)).cwiseAbs().maxCoeff());
    }
    checks.push_back(at_most("sector generator vs spin-operator dissipator", worst, 1e-12));
  }

  {
    const ChainConfig config = ChainConfig::uniform(4, 0.05, 0.05);
    const Operator full = embed_in_full(random_sector_state(5, 5), 4);
    OracleOptions flipped;
    flipped.sz_sign = -1;
    const double dev = (oracle_evolve_full(config, full, 2.0) - oracle_evolve_full(config, full, 2.0, flipped))
                           .cwiseAbs()
                           .maxCoeff();
    checks.push_back(at_most("sigma^z sign convention independence", dev, 1e-12));
  }

  {
    double worst = 0.0;
    for (int n : {4, 6}) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const Operator rho = random_sector_state(n + 1, 300 + s);
        const Eigen::Matrix2cd direct = receiver_block(rho);
        const Eigen::Matrix2cd brute = full_partial_trace_receiver(embed_in_full(rho, n), n);
        worst = std::max(worst, (direct - brute).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back(at_most("receiver reduction vs explicit partial trace", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (double jp : {0.05, 0.1, 0.3}) {
      const ChainConfig config = ChainConfig::uniform(4, jp, 0.0);
      const FourSpinSolution sol = four_spin_solution(config);
      const Eigen::Matrix4d block = build_hamiltonian(config).bottomRightCorner(4, 4);
      for (int k = 0; k < 4; ++k) {
        const Eigen::Vector4d v = sol.eigenvectors.col(k);
        worst = std::max(worst, (block * v - sol.eigenvalues[static_cast<std::size_t>(k)] * v).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back(at_most("four-spin closed-form eigenpairs", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (double jp : {0.05, 0.1, 0.3}) {
      const ChainConfig config = ChainConfig::uniform(4, jp, 0.0);
      for (int i = 0; i < 50; ++i) {
        const double t = 20.0 * i / 49.0;
        Operator rho = Operator::Zero(5, 5);
        rho(1, 1) = 1.0;
        rho = make_propagator(config, t).apply(rho);
        const double p = project_channel_vacuum(rho).real();
        worst = std::max(worst, std::abs(p - four_spin_p1(config, t)));
      }
    }
    checks.push_back(at_most("single-measurement success vs four-spin formula", worst, 1e-8));
  }

  {
    const ChainConfig config = ChainConfig::uniform(8, 0.05, 0.03);
    const Operator rho = random_sector_state(config.dim(), 11);
    const double dev = (make_propagator(config, 25.0).apply(rho) - evolve_operator(rho, 25.0, config))
                           .cwiseAbs()
                           .maxCoeff();
    checks.push_back(at_most("matrix exponential vs adaptive Runge-Kutta", dev, 1e-8));
  }

  {
    const ChainConfig config = ChainConfig::uniform(6, 0.05, 0.02);
    double worst = 0.0;
    for (double t : {1.0, 150.0, 400.0}) {
      const std::vector<double> grid = {0.0, t};
      const FidelityTrace trace = transfer_fidelities(config, grid);
      const McEstimate mc = haar_average_mc(config, t, 4000, 42);
      worst = std::max(worst, std::abs(mc.mean - trace.f_av().back()) / mc.standard_error);
    }
    checks.push_back(at_most("closed-form average fidelity vs Haar Monte Carlo (in standard errors)", worst, 3.0));
  }

  {
    const ChainConfig config = ChainConfig::uniform(12, 0.05, 0.0);
    const SweepRecord rec = run_point(config, 0.0, SweepSettings{}, "tau", 0.0);
    const double expected = effective_model(config).t_m_eff;
    const double dev = rec.t_m ? std::abs(*rec.t_m - expected) / expected : 1.0;
    checks.push_back(at_most("transfer time vs effective two-qubit model (relative)", dev, 0.02));
  }

  return checks;
}

}  // namespace spinrelay
