#pragma once

#include "spinrelay/core.hpp"
#include "spinrelay/integrator.hpp"

namespace spinrelay {

/// Real symmetric (N+1)x(N+1) Hamiltonian over the sector basis. Vacuum row and
/// column vanish; the site block is the nearest-neighbour hopping matrix.
using HamiltonianMatrix = Eigen::MatrixXd;

HamiltonianMatrix build_hamiltonian(const ChainConfig& config);

/// Eigenvalue of sigma^z_site on a sector basis state (+1 excited, -1 not).
/// `sign` flips the convention; nothing physical may depend on it.
int spin_z(int site, int label, int sign = +1) noexcept;

/// Coefficient multiplying rho(a, b) in the dissipator,
/// gamma * sum_{k in S} (z_k(a) z_k(b) - 1). Always <= 0.
double dephasing_coefficient(const ChainConfig& config, int a, int b);

/// Column-major vectorization: vec(rho)[a + D b] = rho(a, b).
Eigen::VectorXcd vectorize(const Operator& op);
Operator unvectorize(const Eigen::VectorXcd& v, int dim);

/// Lindblad generator on vectorized (N+1)x(N+1) operators.
class Generator {
 public:
  Generator(int dim, Eigen::MatrixXcd superoperator);

  int dim() const noexcept { return dim_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return superop_; }
  Operator apply(const Operator& op) const;

 private:
  int dim_;
  Eigen::MatrixXcd superop_;
};

Generator build_generator(const ChainConfig& config);

/// Fixed-duration map exp(L t) as a dense superoperator.
class Propagator {
 public:
  Propagator(int dim, double duration, Eigen::MatrixXcd map);

  int dim() const noexcept { return dim_; }
  double duration() const noexcept { return duration_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return map_; }

  Operator apply(const Operator& op) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  /// In-place on a vectorized operator; `scratch` avoids reallocating.
  void apply_inplace(Eigen::VectorXcd& vec, Eigen::VectorXcd& scratch) const;

  /// This map followed by `next`.
  Propagator then(const Propagator& next) const;

 private:
  int dim_;
  double duration_;
  Eigen::MatrixXcd map_;
};

Propagator make_propagator(const ChainConfig& config, double step);
Propagator make_propagator(const Generator& generator, double step);

/// Adaptive Runge-Kutta propagation; independent of the exponential path.
Operator evolve_operator(const Operator& op, double duration, const ChainConfig& config,
                         const StepControl& control = {});
/// States default to tighter tolerances than bare operators: pure inputs sit on
/// the edge of the positivity check and the default error budget can cross it.
inline constexpr StepControl kStateStepControl{1e-12, 1e-10};
DensityMatrix evolve(const DensityMatrix& rho, double duration, const ChainConfig& config,
                     const StepControl& control = kStateStepControl);

}  // namespace spinrelay
