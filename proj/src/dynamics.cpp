#include "spinrelay/dynamics.hpp"

#include <string>

#include "spinrelay/errors.hpp"
#include "spinrelay/expm.hpp"

namespace spinrelay {

HamiltonianMatrix build_hamiltonian(const ChainConfig& config) {
  const int n = config.n_total();
  HamiltonianMatrix h = HamiltonianMatrix::Zero(config.dim(), config.dim());
  for (int m = 1; m < n; ++m) {
    const bool boundary = (m == 1 || m == n - 1);
    const double coupling = boundary ? config.j_boundary() : config.j_channel();
    h(basis::site(m), basis::site(m + 1)) = coupling;
    h(basis::site(m + 1), basis::site(m)) = coupling;
  }
  return h;
}

int spin_z(int site, int label, int sign) noexcept { return label == site ? sign : -sign; }

double dephasing_coefficient(const ChainConfig& config, int a, int b) {
  double sum = 0.0;
  for (int k : config.dephasing_sites()) {
    sum += static_cast<double>(spin_z(k, a) * spin_z(k, b) - 1);
  }
  return config.gamma() * sum;
}

Eigen::VectorXcd vectorize(const Operator& op) {
  return Eigen::Map<const Eigen::VectorXcd>(op.data(), op.size());
}

Operator unvectorize(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("vector length does not match operator dimension");
  }
  return Eigen::Map<const Operator>(v.data(), dim, dim);
}

Generator::Generator(int dim, Eigen::MatrixXcd superoperator)
    : dim_(dim), superop_(std::move(superoperator)) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim_) * dim_;
  if (superop_.rows() != d2 || superop_.cols() != d2) {
    throw DimensionError("generator must be (dim^2)x(dim^2)");
  }
}

Operator Generator::apply(const Operator& op) const {
  if (op.rows() != dim_ || op.cols() != dim_) throw DimensionError("operator/generator mismatch");
  return unvectorize(superop_ * vectorize(op), dim_);
}

Generator build_generator(const ChainConfig& config) {
  const int d = config.dim();
  const HamiltonianMatrix h = build_hamiltonian(config);
  const Complex i_unit(0.0, 1.0);
  auto idx = [d](int a, int b) { return static_cast<Eigen::Index>(a) + static_cast<Eigen::Index>(d) * b; };

  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  // -i (H rho - rho H)
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        if (h(a, c) != 0.0) l(idx(a, b), idx(c, b)) += -i_unit * h(a, c);
        if (h(c, b) != 0.0) l(idx(a, b), idx(a, c)) += i_unit * h(c, b);
      }
      l(idx(a, b), idx(a, b)) += dephasing_coefficient(config, a, b);
    }
  }
  return Generator(d, std::move(l));
}

Propagator::Propagator(int dim, double duration, Eigen::MatrixXcd map)
    : dim_(dim), duration_(duration), map_(std::move(map)) {
  const Eigen::Index d2 = static_cast<Eigen::Index>(dim_) * dim_;
  if (map_.rows() != d2 || map_.cols() != d2) throw DimensionError("propagator must be (dim^2)x(dim^2)");
}

Operator Propagator::apply(const Operator& op) const {
  if (op.rows() != dim_ || op.cols() != dim_) throw DimensionError("operator/propagator mismatch");
  return unvectorize(map_ * vectorize(op), dim_);
}

DensityMatrix Propagator::apply(const DensityMatrix& rho) const { return DensityMatrix(apply(rho.matrix())); }

void Propagator::apply_inplace(Eigen::VectorXcd& vec, Eigen::VectorXcd& scratch) const {
  scratch.noalias() = map_ * vec;
  vec.swap(scratch);
}

Propagator Propagator::then(const Propagator& next) const {
  if (next.dim_ != dim_) throw DimensionError("cannot compose propagators of different dimension");
  return Propagator(dim_, duration_ + next.duration_, next.map_ * map_);
}

Propagator make_propagator(const ChainConfig& config, double step) {
  if (!(step >= 0.0)) throw ConfigError("propagator step must be non-negative");
  return make_propagator(build_generator(config), step);
}

Propagator make_propagator(const Generator& generator, double step) {
  if (!(step >= 0.0)) throw ConfigError("propagator step must be non-negative");
  return Propagator(generator.dim(), step, expm(generator.matrix() * Complex(step, 0.0)));
}

Operator evolve_operator(const Operator& op, double duration, const ChainConfig& config,
                         const StepControl& control) {
  if (!(duration >= 0.0)) throw ConfigError("evolution duration must be non-negative");
  if (op.rows() != config.dim() || op.cols() != config.dim()) {
    throw DimensionError("operator dimension " + std::to_string(op.rows()) + " does not match chain");
  }
  const Generator gen = build_generator(config);
  const Eigen::MatrixXcd& l = gen.matrix();
  auto rhs = [&l](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return l * v; };
  const Eigen::VectorXcd out = integrate_dopri5(rhs, vectorize(op), duration, control);
  return unvectorize(out, config.dim());
}

DensityMatrix evolve(const DensityMatrix& rho, double duration, const ChainConfig& config,
                     const StepControl& control) {
  return DensityMatrix(evolve_operator(rho.matrix(), duration, config, control));
}

}  // namespace spinrelay
