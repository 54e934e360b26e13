#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinrelay {

/// Invalid physical or numerical parameters (odd N, negative rates, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand shapes that do not match the chain they are used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that should be a density matrix is not one within tolerance.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive integrator could not meet its tolerance.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The post-selected branch has (numerically) vanished.
class ZeroProbabilityError : public std::runtime_error {
 public:
  ZeroProbabilityError(std::size_t measurement_index, double probability)
      : std::runtime_error("measurement " + std::to_string(measurement_index) +
                           " succeeds with probability " + std::to_string(probability)),
        measurement_index_(measurement_index),
        probability_(probability) {}

  /// 1-based index of the measurement at which the branch died (0 for a bare projection).
  std::size_t measurement_index() const noexcept { return measurement_index_; }
  double probability() const noexcept { return probability_; }

 private:
  std::size_t measurement_index_;
  double probability_;
};

/// No first fidelity peak could be confirmed inside the trace.
class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinrelay
