#include "singfront/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "singfront/error.hpp"

namespace singfront {

namespace {

constexpr int kFirstRung = 10;
constexpr int kLastRung = 40;
constexpr double kInfiniteThreshold = 1e8;
constexpr double kOscillationSpread = 1e-2;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool tail_diverges(const std::vector<double>& r) {
  const std::size_t n = r.size();
  if (n < 6) return false;
  bool all_large = true;
  for (std::size_t i = n - 5; i < n; ++i) {
    if (!(r[i] > kInfiniteThreshold && r[i] > r[i - 1])) all_large = false;
  }
  if (all_large) return true;
  // Slower divergence (e.g. u^-1/2 or log u): strictly increasing tail whose
  // increments do not contract.
  for (std::size_t i = n - 5; i < n; ++i) {
    const double d = r[i] - r[i - 1];
    const double d_prev = r[i - 1] - r[i - 2];
    if (!(d > 1e3 * kEps * std::fabs(r[i]))) return false;
    if (!(d >= 0.999 * d_prev)) return false;
  }
  return true;
}

double refine_root(double lo, double hi, const auto& fn, const auto& dfn) {
  // Invariant: fn(lo) and fn(hi) have opposite signs (or one is zero).
  double flo = fn(lo);
  if (flo == 0.0) return lo;
  if (fn(hi) == 0.0) return hi;
  for (int i = 0; i < 2200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    if (t <= 0.0) break;
    const double d = dfn(t);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = t - fn(t) / d;
    if (!(next >= lo && next <= hi)) break;
    t = next;
  }
  return t;
}

SingularLimit apply_override(SingularLimit sampled, std::optional<double> override_value) {
  if (!override_value) return sampled;
  SingularLimit out = sampled;
  out.value = *override_value;
  out.provenance = Provenance::AnalyticOverride;
  const double a = *override_value;
  const double b = sampled.value;
  bool disagree = false;
  if (std::isinf(a) || std::isinf(b)) {
    disagree = a != b;
  } else {
    disagree = std::fabs(a - b) > 1e-3 * std::max({std::fabs(a), std::fabs(b), 1e-300});
  }
  if (disagree) {
    out.warning = "analytic override " + fmt(a) + " disagrees with extrapolated value " + fmt(b);
  }
  return out;
}

}  // namespace

bool SingularLimit::finite() const { return std::isfinite(value); }

double extrapolate_ladder(const std::vector<double>& ratios, int sign) {
  std::vector<double> r(ratios.size());
  std::transform(ratios.begin(), ratios.end(), r.begin(), [&](double x) { return sign * x; });
  const std::size_t n = r.size();
  if (n < 6) throw NoLimit("ladder too short to extrapolate");
  for (double x : r) {
    if (!std::isfinite(x)) throw NoLimit("non-finite ratio on the extrapolation ladder");
  }
  if (tail_diverges(r)) return sign * kInf;

  double scale = 0.0;
  for (double x : r) scale = std::max(scale, std::fabs(x));
  const double noise = 1e3 * kEps * scale;

  // Oscillation check on the last six rungs.
  const auto first = r.end() - 6;
  const double hi = *std::max_element(first, r.end());
  const double lo = *std::min_element(first, r.end());
  int sign_changes = 0;
  int last_sign = 0;
  for (auto it = first + 1; it != r.end(); ++it) {
    const double d = *it - *(it - 1);
    if (std::fabs(d) <= noise) continue;
    const int s = d > 0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++sign_changes;
    last_sign = s;
  }
  if (sign_changes > 0) {
    const double spread = (hi - lo) / std::max({std::fabs(hi), std::fabs(lo), 1e-300});
    if (spread > kOscillationSpread) {
      throw NoLimit("ratio oscillates on the extrapolation ladder (relative spread " + fmt(spread) +
                    " between " + fmt(sign * lo) + " and " + fmt(sign * hi) + ")");
    }
  }

  // Aitken delta-squared on the last three rungs when the tail contracts.
  double value = r[n - 1];
  const double d1 = r[n - 2] - r[n - 3];
  const double d2 = r[n - 1] - r[n - 2];
  if (sign_changes == 0 && std::fabs(d2) > noise && std::fabs(d2) < std::fabs(d1) &&
      (d1 > 0) == (d2 > 0)) {
    value = r[n - 1] - d2 * d2 / (d2 - d1);
  }
  if (std::fabs(value) <= noise) value = 0.0;
  value = std::max(value, 0.0);
  return sign * value;
}

SingularLimit singular_limit_zero(const ProblemSpec& spec) {
  SingularLimit lim;
  lim.side = EndSide::Zero;
  for (int k = kFirstRung; k <= kLastRung; ++k) {
    const double u = std::ldexp(1.0, -k);
    lim.diagnostics.push_back(spec.h(u) / std::pow(u, spec.alpha));
  }
  if (spec.h0_alpha_override) {
    try {
      lim.value = extrapolate_ladder(lim.diagnostics, +1);
    } catch (const NoLimit&) {
      lim.value = std::numeric_limits<double>::quiet_NaN();
    }
    return apply_override(lim, spec.h0_alpha_override);
  }
  lim.value = extrapolate_ladder(lim.diagnostics, +1);
  return lim;
}

SingularLimit singular_limit_one(const ProblemSpec& spec) {
  SingularLimit lim;
  lim.side = EndSide::One;
  for (int k = kFirstRung; k <= kLastRung; ++k) {
    const double eps = std::ldexp(1.0, -k);
    lim.diagnostics.push_back(-spec.h(1.0 - eps) / std::pow(eps, spec.alpha));
  }
  if (spec.h1_alpha_override) {
    try {
      lim.value = extrapolate_ladder(lim.diagnostics, -1);
    } catch (const NoLimit&) {
      lim.value = std::numeric_limits<double>::quiet_NaN();
    }
    return apply_override(lim, spec.h1_alpha_override);
  }
  lim.value = extrapolate_ladder(lim.diagnostics, -1);
  return lim;
}

double m_function(double alpha, double beta, double gamma, double t) {
  return std::pow(t, alpha + 1.0) - beta * std::pow(t, alpha) + gamma;
}

MMin m_min(double alpha, double beta, double gamma) {
  if (beta <= 0.0) return {0.0, gamma};
  const double t = alpha * beta / (alpha + 1.0);
  return {t, gamma - beta * std::pow(t, alpha) / (alpha + 1.0)};
}

EtaRoots eta_roots(double alpha, double beta, double gamma) {
  EtaRoots out;
  out.alpha = alpha;
  out.beta = beta;
  out.gamma = gamma;
  const MMin mm = m_min(alpha, beta, gamma);
  out.min_value = mm.min_value;
  out.argmin = mm.argmin;

  const double dead_band = 1e-12 * std::max(1.0, gamma);
  if (mm.min_value > dead_band) return out;
  if (std::fabs(mm.min_value) <= dead_band) {
    out.roots.push_back(mm.argmin);
    return out;
  }
  // min < 0 forces beta > 0: one root on each side of the argmin.
  auto fn = [&](double t) { return m_function(alpha, beta, gamma, t); };
  auto dfn = [&](double t) {
    return (alpha + 1.0) * std::pow(t, alpha) - alpha * beta * std::pow(t, alpha - 1.0);
  };
  const double left = gamma == 0.0 ? 0.0 : refine_root(0.0, mm.argmin, fn, dfn);
  const double right = gamma == 0.0 ? beta : refine_root(mm.argmin, beta, fn, dfn);
  out.roots = {left, right};
  return out;
}

EtaRoots eta0_roots(const ProblemSpec& spec, double c, double h0) {
  return eta_roots(spec.alpha, c * spec.g(0.0) - spec.f(0.0), h0);
}

EndSlope eta1_slope(double alpha, double c, const ProblemSpec& spec, double h1) {
  if (std::isinf(h1)) {
    throw LimitInfinite("h_{alpha,1} is -infinity: the linear start slope at u = 1 is undefined");
  }
  const double b = c * spec.g(1.0) - spec.f(1.0);
  if (h1 == 0.0) return {std::max(0.0, -b), true};
  const double target = std::fabs(h1);
  auto fn = [&](double s) { return std::pow(s, alpha + 1.0) + b * std::pow(s, alpha) - target; };
  auto dfn = [&](double s) {
    return (alpha + 1.0) * std::pow(s, alpha) + alpha * b * std::pow(s, alpha - 1.0);
  };
  double hi = std::max(1.0, -b);
  while (fn(hi) <= 0.0) hi *= 2.0;
  return {refine_root(0.0, hi, fn, dfn), false};
}

EndSlope eta1_slope(double alpha, double c, const ProblemSpec& spec) {
  return eta1_slope(alpha, c, spec, singular_limit_one(spec).value);
}

}  // namespace singfront
