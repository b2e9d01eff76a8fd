#include "singfront/speed.hpp"

#include <cmath>
#include <cstdio>

#include "singfront/error.hpp"

namespace singfront {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

SpeedResult critical_speed(const ProblemSpec& spec, double tol_c) {
  if (!(tol_c > 0.0)) throw Error("critical_speed: tolerance must be positive");
  const EndLimits limits = end_limits(spec);
  if (!limits.zero.finite()) {
    throw ExistenceFails("h_{0,alpha} is infinite: no front exists for any speed c");
  }
  SpeedResult r;
  r.tolerance = tol_c;
  r.bounds = estimate(spec);

  if (r.bounds.coincide(tol_c)) {
    r.c_star = 0.5 * (r.bounds.lower + r.bounds.upper);
    r.from_bounds = true;
    return r;
  }

  auto connects = [&](double c) {
    ++r.iterations;
    return shoot(spec, c, limits).connects();
  };

  double low = r.bounds.lower;
  double high = r.bounds.upper;
  if (!connects(high)) {
    high = r.bounds.upper + 1.0;
    r.bracket_extended = true;
    if (!connects(high)) {
      throw BracketFailure("no connecting trajectory at c = " + fmt(r.bounds.upper) + " or c = " +
                           fmt(high) + ", although fronts exist above the upper bound");
    }
  }
  r.bracket_history.emplace_back(low, high);
  while (high - low >= tol_c) {
    const double mid = 0.5 * (low + high);
    if (connects(mid)) {
      high = mid;
    } else {
      low = mid;
    }
    r.bracket_history.emplace_back(low, high);
  }
  r.c_star = 0.5 * (low + high);

  Trajectory above = shoot(spec, r.c_star + tol_c, limits);
  ++r.iterations;
  if (!above.connects()) {
    throw BracketFailure("classifier is not monotone: c = " + fmt(high) +
                         " connects but c = " + fmt(r.c_star + tol_c) + " does not");
  }
  r.above = std::move(above);
  if (r.c_star - tol_c > r.bounds.lower) {
    Trajectory below = shoot(spec, r.c_star - tol_c, limits);
    ++r.iterations;
    if (below.connects()) {
      throw BracketFailure("classifier is not monotone: c = " + fmt(low) +
                           " does not connect but c = " + fmt(r.c_star - tol_c) + " does");
    }
    r.below = std::move(below);
  }
  return r;
}

Admissibility admissible(const ProblemSpec& spec, double c) {
  Admissibility a;
  const SingularLimit zero = singular_limit_zero(spec);
  if (!zero.finite()) {
    a.reason = NoSolutionReason::LimitInfinite;
    a.detail = "h_{0,alpha} is infinite: no solution exists for any c";
    return a;
  }
  const EndLimits limits{zero, singular_limit_one(spec)};
  SolveOutcome out = solve(spec, c, limits);
  a.admissible = out.solved();
  a.trajectory = std::move(out.trajectory);
  a.reason = out.reason;
  a.detail = std::move(out.detail);
  a.certificate = certify_existence(estimate(spec), c);
  return a;
}

}  // namespace singfront
