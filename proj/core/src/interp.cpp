#include "singfront/interp.hpp"

#include <algorithm>
#include <cmath>

#include "singfront/error.hpp"

namespace singfront {

HermiteInterpolant::HermiteInterpolant(std::vector<double> x, std::vector<double> y,
                                       std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n || dy.size() != n) {
    throw Error("HermiteInterpolant: need >= 2 nodes with matching value and slope arrays");
  }
  left_slope_.resize(n - 1);
  right_slope_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    if (!(h > 0.0)) throw Error("HermiteInterpolant: nodes must be strictly increasing");
    double d0 = dy[i];
    double d1 = dy[i + 1];
    const double secant = (y_[i + 1] - y_[i]) / h;
    if (secant != 0.0 && d0 * secant >= 0.0 && d1 * secant >= 0.0) {
      const double a = d0 / secant;
      const double b = d1 / secant;
      const double r2 = a * a + b * b;
      if (r2 > 9.0) {
        const double tau = 3.0 / std::sqrt(r2);
        d0 = tau * a * secant;
        d1 = tau * b * secant;
      }
    }
    left_slope_[i] = d0;
    right_slope_[i] = d1;
  }
}

std::size_t HermiteInterpolant::interval(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double HermiteInterpolant::operator()(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * left_slope_[i] + h01 * y_[i + 1] + h11 * h * right_slope_[i];
}

double HermiteInterpolant::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / h;
  const double d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h;
  const double d11 = 3 * t2 - 2 * t;
  return d00 * y_[i] + d10 * left_slope_[i] + d01 * y_[i + 1] + d11 * right_slope_[i];
}

}  // namespace singfront
