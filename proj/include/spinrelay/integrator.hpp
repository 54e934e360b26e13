#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "spinrelay/errors.hpp"

namespace spinrelay {

struct StepControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double initial_step = 1e-2;
  long max_steps = 50'000'000;
};

/// Integrates the autonomous system y' = rhs(y) over `duration` with the
/// Dormand-Prince 5(4) embedded pair. `State` is any Eigen dense complex type.
template <typename State, typename Rhs>
State integrate_dopri5(Rhs&& rhs, State y, double duration, const StepControl& control = {}) {
  if (duration < 0.0) throw ConfigError("integration duration must be non-negative");
  if (duration == 0.0) return y;

  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  double t = 0.0;
  double h = std::min(control.initial_step, duration);
  State k1 = rhs(y);
  long steps = 0;
  while (t < duration) {
    if (++steps > control.max_steps) throw IntegrationError("step budget exhausted");
    const bool last = t + h >= duration;
    if (last) h = duration - t;

    const State k2 = rhs(State(y + h * (a21 * k1)));
    const State k3 = rhs(State(y + h * (a31 * k1 + a32 * k2)));
    const State k4 = rhs(State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 = rhs(State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 = rhs(State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(y_new);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const auto scale =
        (control.abs_tol + control.rel_tol * y.array().abs().max(y_new.array().abs())).eval();
    const double err_norm =
        std::sqrt((err.array().abs() / scale).square().sum() / static_cast<double>(err.size()));
    if (!std::isfinite(err_norm)) throw IntegrationError("non-finite error estimate");

    if (err_norm <= 1.0) {
      t = last ? duration : t + h;
      y = std::move(y_new);
      k1 = k7;
    }
    const double factor =
        err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (t < duration && h < 1e-14 * std::max(1.0, t)) {
      throw IntegrationError("step size underflow at t = " + std::to_string(t));
    }
  }
  return y;
}

}  // namespace spinrelay
