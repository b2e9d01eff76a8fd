#pragma once

// Adaptive Dormand-Prince 5(4) integrator for a scalar ODE y' = F(x, y).
// Integration may run in either direction. Stages that produce a
// non-finite slope are treated as a rejected step.

#include <algorithm>
#include <cmath>
#include <string>

#include "singfront/error.hpp"

namespace singfront::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0: chosen from the initial slope
  double min_step = 1e-14;
  double max_step = 0.1;
  long max_steps = 2'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  double min_step = 0.0;  // smallest accepted |h|
  double max_step = 0.0;
};

/// Integrates from (x0, y0) to x_end. `observe(x, y, dy)` is called for the
/// initial point and after every accepted step; returning false stops the
/// integration early. Throws StepUnderflow when |h| drops below min_step.
template <class Rhs, class Observer>
Stats integrate(const Rhs& rhs, double x0, double y0, double x_end, const Options& opt,
                Observer&& observe) {
  // Butcher tableau of Dormand and Prince (1980).
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats stats;
  const double dir = x_end >= x0 ? 1.0 : -1.0;
  double x = x0;
  double y = y0;
  double k1 = rhs(x, y);
  if (!std::isfinite(k1)) {
    throw NumericalError("non-finite slope at the initial point x = " + std::to_string(x0));
  }
  if (!observe(x, y, k1)) return stats;

  double h = opt.initial_step;
  if (h <= 0.0) h = 1e-4 * std::fabs(x_end - x0);
  h = std::min({h, opt.max_step, std::fabs(x_end - x)});

  while (dir * (x_end - x) > 0.0) {
    if (stats.accepted + stats.rejected > opt.max_steps) {
      throw NumericalError("integrator exceeded the step budget");
    }
    if (h < opt.min_step) {
      throw StepUnderflow("step size underflow (h = " + std::to_string(h) + ") at x = " +
                          std::to_string(x));
    }
    const bool last = h >= std::fabs(x_end - x);
    const double hs = last ? x_end - x : dir * h;

    const double k2 = rhs(x + c2 * hs, y + hs * (a21 * k1));
    const double k3 = rhs(x + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    const double k4 = rhs(x + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = rhs(x + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 =
        rhs(x + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double x_new = last ? x_end : x + hs;
    const double k7 = rhs(x_new, y_new);

    const double err_abs = std::fabs(hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = opt.atol + opt.rtol * std::max(std::fabs(y), std::fabs(y_new));
    const double err = err_abs / scale;

    if (!std::isfinite(err) || !std::isfinite(y_new) || !std::isfinite(k7)) {
      ++stats.rejected;
      h *= 0.25;
      continue;
    }
    if (err > 1.0) {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    ++stats.accepted;
    const double taken = std::fabs(hs);
    stats.min_step = stats.accepted == 1 ? taken : std::min(stats.min_step, taken);
    stats.max_step = std::max(stats.max_step, taken);
    x = x_new;
    y = y_new;
    k1 = k7;
    if (!observe(x, y, k1)) return stats;

    const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
    h = std::min(h * grow, opt.max_step);
  }
  return stats;
}

}  // namespace singfront::ode
