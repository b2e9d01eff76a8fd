#pragma once

// Piecewise cubic Hermite interpolation with known nodal derivatives.
// On every interval where the data and both end slopes share a direction the
// slopes are limited (Fritsch-Carlson) so the piece stays monotone; a
// positive monotone piece therefore stays positive.

#include <span>
#include <vector>

namespace singfront {

class HermiteInterpolant {
 public:
  HermiteInterpolant() = default;

  /// `x` strictly increasing; sizes equal and >= 2.
  HermiteInterpolant(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::span<const double> nodes() const { return x_; }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> left_slope_;   // slope used at x_[i] on interval i
  std::vector<double> right_slope_;  // slope used at x_[i+1] on interval i
};

}  // namespace singfront
