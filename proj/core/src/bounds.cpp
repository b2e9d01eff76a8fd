#include "singfront/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "singfront/asymptotics.hpp"
#include "singfront/error.hpp"
#include "singfront/quadrature.hpp"

namespace singfront {

namespace {

using Fn = std::function<double(double)>;

// int_a^b w(s)/s^p ds. With a == 0 and p >= 1 the substitution s = b sigma^2
// keeps the integrand smooth at the open endpoint.
quad::Result integrate_weighted(const Fn& w, double p, double a, double b, double abs_tol) {
  const quad::Options opt{abs_tol, 1e-13, 4000};
  if (p == 0.0) return quad::integrate(w, a, b, opt);
  if (a == 0.0 && p >= 1.0) {
    auto integrand = [&](double sigma) {
      const double s = b * sigma * sigma;
      return 2.0 * b * sigma * w(s) / std::pow(s, p);
    };
    return quad::integrate(integrand, 0.0, 1.0, opt);
  }
  return quad::integrate([&](double s) { return w(s) / std::pow(s, p); }, a, b, opt);
}

struct Curve {
  Fn w;
  double power = 0.0;
  double limit_at_zero = 0.0;  // analytic u -> 0+ value
};

struct Extremum {
  double value = 0.0;
  double at = 0.0;
  double error = 0.0;
};

// sup (sign = +1) or inf (sign = -1) of the mean-value curve over (0, 1].
Extremum extremum(const Curve& curve, int sign, const Numerics& num) {
  const int n = num.bound_grid;
  const double step = 1.0 / (n - 1);
  std::vector<double> cumulative(static_cast<std::size_t>(n), 0.0);
  double error = 0.0;
  for (int i = 1; i < n; ++i) {
    const double a = (i - 1) * step;
    const double b = i == n - 1 ? 1.0 : i * step;
    const quad::Result r = integrate_weighted(curve.w, curve.power, a, b, num.quad_tol);
    cumulative[static_cast<std::size_t>(i)] = cumulative[static_cast<std::size_t>(i - 1)] + r.value;
    error += r.error;
  }
  auto node = [&](int i) { return i == n - 1 ? 1.0 : i * step; };
  auto value_at = [&](int i) {
    return i == 0 ? curve.limit_at_zero : cumulative[static_cast<std::size_t>(i)] / node(i);
  };

  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (sign * value_at(i) > sign * value_at(best)) best = i;
  }
  Extremum out{value_at(best), node(best), error};

  // Golden-section polish on the cells around the winning node.
  const int lo_i = std::max(best - 1, 0);
  const int hi_i = std::min(best + 1, n - 1);
  const double anchor = node(lo_i);
  const double anchor_integral = cumulative[static_cast<std::size_t>(lo_i)];
  auto mean_at = [&](double u) {
    const double tail = integrate_weighted(curve.w, curve.power, anchor, u, num.quad_tol).value;
    return (anchor_integral + tail) / u;
  };
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = anchor;
  double b = node(hi_i);
  if (a == 0.0) a = 1e-3 * step;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = sign * mean_at(x1);
  double f2 = sign * mean_at(x2);
  while (b - a > num.golden_tol) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = sign * mean_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = sign * mean_at(x2);
    }
  }
  const double polished_at = f1 > f2 ? x1 : x2;
  const double polished = sign * std::max(f1, f2);
  if (sign * polished > sign * out.value) {
    out.value = polished;
    out.at = polished_at;
  }
  return out;
}

double speed_formula(double alpha, double num, double den, double h) {
  return num / den + (alpha + 1.0) / den * std::pow(h / std::pow(alpha, alpha), 1.0 / (alpha + 1.0));
}

}  // namespace

bool SpeedBounds::coincide(double tol) const { return std::fabs(upper - lower) <= tol; }

double mean_value_curve(const Fn& w, double u, double singular_power, double abs_tol) {
  if (!(u > 0.0 && u <= 1.0)) throw Error("mean_value_curve: u must lie in (0, 1]");
  if (singular_power > 0.0) {
    std::vector<double> ladder;
    for (int k = 10; k <= 40; ++k) {
      const double s = std::ldexp(1.0, -k);
      ladder.push_back(w(s) / std::pow(s, singular_power));
    }
    if (std::isinf(extrapolate_ladder(ladder, +1))) {
      throw SingularDivergence("integrand w(s)/s^p is unbounded as s -> 0+");
    }
  }
  return integrate_weighted(w, singular_power, 0.0, u, abs_tol).value / u;
}

double lower_bound(double alpha, double f0, double g0, double h0) {
  return speed_formula(alpha, f0, g0, h0);
}

SpeedBounds constants(const ProblemSpec& spec) {
  const SingularLimit h0 = singular_limit_zero(spec);
  if (!h0.finite()) {
    throw SingularDivergence("h(u)/u^alpha is unbounded at 0+; H0 is infinite");
  }
  SpeedBounds b;
  b.alpha = spec.alpha;
  b.f0 = spec.f(0.0);
  b.g0 = spec.g(0.0);
  b.h0_alpha = h0.value;

  const Numerics& num = spec.numerics;
  const Extremum F = extremum({[&](double s) { return spec.f(s); }, 0.0, b.f0}, +1, num);
  const Extremum G = extremum({[&](double s) { return spec.g(s); }, 0.0, b.g0}, -1, num);
  const Extremum H =
      extremum({[&](double s) { return spec.h(s); }, spec.alpha, b.h0_alpha}, +1, num);
  b.F0 = F.value;
  b.F0_at = F.at;
  b.G0 = G.value;
  b.G0_at = G.at;
  b.H0 = H.value;
  b.H0_at = H.at;
  b.quadrature_error_estimate = F.error + G.error + H.error;
  if (!(b.G0 > 0.0)) {
    throw ValidationError("G0 = " + std::to_string(b.G0) +
                          " is not positive; the mean of g must stay positive on (0, 1)");
  }
  return b;
}

SpeedBounds estimate(const ProblemSpec& spec) {
  const SingularLimit h0 = singular_limit_zero(spec);
  if (!h0.finite()) {
    throw ExistenceFails("h_{0,alpha} is infinite: no front exists for any speed c");
  }
  SpeedBounds b = constants(spec);
  b.lower = speed_formula(spec.alpha, b.f0, b.g0, b.h0_alpha);
  b.upper = speed_formula(spec.alpha, b.F0, b.G0, b.H0);
  return b;
}

std::optional<ExistenceCertificate> certify_existence(const SpeedBounds& bounds, double c) {
  if (!(c > bounds.upper)) return std::nullopt;
  const double beta = c * bounds.G0 - bounds.F0;
  const double gamma = bounds.H0;
  const MMin mm = m_min(bounds.alpha, beta, gamma);
  const double value = m_function(bounds.alpha, beta, gamma, mm.argmin);
  if (!(mm.argmin > 0.0 && value < 0.0)) return std::nullopt;
  return ExistenceCertificate{mm.argmin, value, beta, gamma};
}

std::optional<ExistenceCertificate> certify_existence(const ProblemSpec& spec, double c) {
  return certify_existence(estimate(spec), c);
}

}  // namespace singfront
