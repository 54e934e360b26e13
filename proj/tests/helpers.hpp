#pragma once

#include <random>

#include "spinrelay/core.hpp"

namespace spinrelay::test {

inline double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

inline Operator unit(int dim, int row, int col) {
  Operator op = Operator::Zero(dim, dim);
  op(row, col) = 1.0;
  return op;
}

inline Operator random_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Operator g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Operator rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace spinrelay::test
