#include "singfront/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "singfront/error.hpp"
#include "singfront/quadrature.hpp"

namespace singfront {

namespace {

constexpr double kNearZero = 1e-3;
constexpr double kSlopeMatch = 5e-3;
constexpr double kComparisonSlack = 1e-8;
constexpr double kStiffnessBudget = 1e3;
constexpr double kMaxDegenerateDelta = 1e-2;
constexpr double kManifoldMargin = 1e-5;
constexpr double kLogSwitch = 1e-2;

enum class Verdict { Connects, Positive, Ambiguous };

ode::Options ode_options(const Numerics& num) {
  ode::Options opt;
  opt.rtol = num.rtol;
  opt.atol = num.atol;
  opt.min_step = num.min_step;
  opt.max_step = 0.02;
  return opt;
}

struct Start {
  StartKind kind;
  double delta;
  double z;
  double slope;
};

// alpha h / z^(alpha+1): the contraction rate of the backward flow.
double stiffness(const ProblemSpec& spec, double u, double z) {
  return spec.alpha * spec.h(u) / std::pow(z, spec.alpha + 1.0);
}

Start starting_point(const ProblemSpec& spec, double c, double h1, const Numerics& num) {
  const double alpha = spec.alpha;
  double delta = num.delta_start;
  if (std::isinf(h1)) {
    const double mass =
        quad::integrate([&](double s) { return spec.h(s); }, 1.0 - delta, 1.0,
                        {1e-3 * num.atol * delta, 1e-12, 200})
            .value;
    const double z = std::pow((alpha + 1.0) * mass, 1.0 / (alpha + 1.0));
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw StartUndefined("dominant-balance start is not positive (mass " + std::to_string(mass) +
                           ")");
    }
    return {StartKind::DominantBalance, delta, z, z / delta};
  }
  const EndSlope s = eta1_slope(alpha, c, spec, h1);
  if (s.slope > 0.0) return {StartKind::LinearSeries, delta, s.slope * delta, s.slope};

  // Zero slope: seed on the balance c g - f = h/z^a, moved inward until the
  // backward flow is no stiffer than kStiffnessBudget / delta.
  const double b = c * spec.g(1.0) - spec.f(1.0);
  auto seed = [&](double d) {
    const double u = 1.0 - d;
    return b > 0.0 ? std::pow(spec.h(u) / b, 1.0 / alpha)
                   : std::pow(d, (alpha + 2.0) / (alpha + 1.0));
  };
  while (delta < kMaxDegenerateDelta &&
         stiffness(spec, 1.0 - delta, seed(delta)) * delta > kStiffnessBudget) {
    delta = std::min(2.0 * delta, kMaxDegenerateDelta);
  }
  const double z = seed(delta);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw StartUndefined("degenerate start is not positive at u = " + std::to_string(1.0 - delta));
  }
  return {StartKind::Degenerate, delta, z, z / delta};
}

Trajectory integrate_backward(const ProblemSpec& spec, double c, const EndLimits& limits,
                              const Numerics& num, double u_min) {
  Trajectory t;
  t.c = c;
  t.u_min = u_min;
  const Start start = starting_point(spec, c, limits.one.value, num);
  t.delta_start = start.delta;
  const double u_start = 1.0 - start.delta;
  t.start = start.kind;
  t.slope_at_one = start.slope;

  ode::Options opt = ode_options(num);
  opt.initial_step = 0.1 * start.delta;
  const double u_switch = std::max(kLogSwitch, u_min);
  auto rhs = [&](double u, double z) { return shooting_rhs(spec, c, u, z); };
  try {
    t.stats = ode::integrate(rhs, u_start, start.z, u_switch, opt,
                             [&](double u, double z, double dz) {
                               t.samples.push_back({u, z, dz});
                               return true;
                             });
  } catch (const StepUnderflow& e) {
    const double u = t.samples.empty() ? u_start : t.samples.back().u;
    const double z = t.samples.empty() ? start.z : t.samples.back().z;
    double z_max = 0.0;
    for (const auto& s : t.samples) z_max = std::max(z_max, s.z);
    if (z <= 1e-6 * z_max) {
      throw ZeroCrossing("trajectory collapsed to z <= 0 near u = " + std::to_string(u) +
                             " (integration tolerance failure)",
                         u);
    }
    throw;
  }

  if (u_min < u_switch) {
    // q = z/u against s = ln(1/u):  dq/ds = q - (c g - f) + (h/u^a) / q^a.
    const double alpha = spec.alpha;
    auto q_rhs = [&](double s, double q) {
      if (!(q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      const double u = std::exp(-s);
      return q - (c * spec.g(u) - spec.f(u)) + spec.h(u) / std::pow(u, alpha) / std::pow(q, alpha);
    };
    ode::Options log_opt = ode_options(num);
    log_opt.max_step = 0.25;
    log_opt.initial_step = 1e-3;
    bool first = true;
    const ode::Stats more = ode::integrate(
        q_rhs, -std::log(u_switch), t.samples.back().z / u_switch, -std::log(u_min), log_opt,
        [&](double s, double q, double dq) {
          if (first) {
            first = false;
            return true;
          }
          const double u = std::exp(-s);
          t.samples.push_back({u, q * u, q - dq});
          return true;
        });
    t.stats.accepted += more.accepted;
    t.stats.rejected += more.rejected;
  }
  for (const auto& s : t.samples) {
    if (!(s.z > 0.0)) throw ZeroCrossing("non-positive z at u = " + std::to_string(s.u), s.u);
  }
  t.z_at_umin = t.samples.back().z;
  t.u_min = t.samples.back().u;
  t.build_curve();
  return t;
}

// With q = z/u, u dq/du = -eta0(q)/q^a + O(u): above the largest root q grows
// without bound as u -> 0, below it q settles on a root.
Verdict classify(Trajectory& t) {
  const double z_end = t.z_at_umin;
  const double q_end = z_end / t.u_min;
  const double q_decade = t.z(10.0 * t.u_min) / (10.0 * t.u_min);
  t.decade_growth = q_end / q_decade;

  if (t.eta0.roots.empty()) {
    t.reason = "eta0 has no nonnegative root, so z/u cannot settle as u -> 0";
    return Verdict::Positive;
  }
  const double top = t.eta0.roots.back();
  const double margin = kManifoldMargin * std::max(top, 1.0);
  if (q_end > top + margin) {
    t.reason = "z/u = " + std::to_string(q_end) + " lies above the largest eta0 root " +
               std::to_string(top) + " and keeps growing; z(0+) > 0";
    return Verdict::Positive;
  }
  if (q_end < top - margin) {
    t.reason = "z/u = " + std::to_string(q_end) + " lies below the largest eta0 root " +
               std::to_string(top) + "; z(0+) = 0";
    return Verdict::Connects;
  }
  t.reason = "z/u = " + std::to_string(q_end) + " is within " + std::to_string(margin) +
             " of the largest eta0 root";
  return Verdict::Ambiguous;
}

void record_slope(Trajectory& t) {
  const double slope = t.z_at_umin / t.u_min;
  t.slope_at_zero = slope;
  double best = std::numeric_limits<double>::infinity();
  for (double r : t.eta0.roots) {
    const double scale = r > 0.0 ? r : std::max(1.0, t.eta0.roots.back());
    const double rel = std::fabs(slope - r) / scale;
    if (rel < best) {
      best = rel;
      t.matched_root = r;
    }
  }
  t.slope_matches_root = best <= kSlopeMatch;
}

}  // namespace

const char* to_string(Classification c) {
  return c == Classification::ConnectsToZero ? "ConnectsToZero" : "PositiveLimit";
}

const char* to_string(StartKind k) {
  switch (k) {
    case StartKind::LinearSeries: return "linear-series";
    case StartKind::DominantBalance: return "dominant-balance";
    case StartKind::Degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(NoSolutionReason r) {
  switch (r) {
    case NoSolutionReason::None: return "None";
    case NoSolutionReason::LimitInfinite: return "LimitInfinite";
    case NoSolutionReason::Subcritical: return "Subcritical";
  }
  return "?";
}

void Trajectory::build_curve() {
  std::vector<double> u, z, dz;
  u.reserve(samples.size());
  z.reserve(samples.size());
  dz.reserve(samples.size());
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    u.push_back(it->u);
    z.push_back(it->z);
    dz.push_back(it->dz);
  }
  curve_ = HermiteInterpolant(std::move(u), std::move(z), std::move(dz));
}

EndLimits end_limits(const ProblemSpec& spec) {
  return {singular_limit_zero(spec), singular_limit_one(spec)};
}

double shooting_rhs(const ProblemSpec& spec, double c, double u, double z) {
  if (!(z > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double singular;
  if (u < kNearZero) {
    singular = spec.h(u) / std::pow(u, spec.alpha) * std::pow(u / z, spec.alpha);
  } else {
    singular = spec.h(u) / std::pow(z, spec.alpha);
  }
  return c * spec.g(u) - spec.f(u) - singular;
}

Trajectory shoot(const ProblemSpec& spec, double c) { return shoot(spec, c, end_limits(spec)); }

Trajectory shoot(const ProblemSpec& spec, double c, const EndLimits& limits) {
  return shoot(spec, c, limits, spec.numerics);
}

Trajectory shoot(const ProblemSpec& spec, double c, const EndLimits& limits,
                 const Numerics& num) {
  if (!limits.zero.finite()) {
    throw ExistenceFails("h_{0,alpha} is infinite: no trajectory can reach z(0+) = 0");
  }
  if (!std::isfinite(c)) throw Error("shoot: speed must be finite");
  const EtaRoots roots = eta0_roots(spec, c, limits.zero.value);

  double u_min = num.u_min;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Trajectory t = integrate_backward(spec, c, limits, num, u_min);
    t.eta0 = roots;
    t.retries = attempt;
    const Verdict v = classify(t);
    if (v == Verdict::Connects) {
      t.classification = Classification::ConnectsToZero;
      record_slope(t);
      return t;
    }
    if (v == Verdict::Positive) {
      t.classification = Classification::PositiveLimit;
      return t;
    }
    if (attempt == 1) {
      throw Ambiguous("classification at c = " + std::to_string(c) + " unresolved after retry: " +
                      t.reason);
    }
    u_min /= 10.0;
  }
  throw Ambiguous("unreachable");
}

SolveOutcome solve(const ProblemSpec& spec, double c) {
  const SingularLimit zero = singular_limit_zero(spec);
  if (!zero.finite()) {
    return {std::nullopt, NoSolutionReason::LimitInfinite,
            "h_{0,alpha} is infinite: no solution exists for any c"};
  }
  return solve(spec, c, {zero, singular_limit_one(spec)});
}

SolveOutcome solve(const ProblemSpec& spec, double c, const EndLimits& limits) {
  if (!limits.zero.finite()) {
    return {std::nullopt, NoSolutionReason::LimitInfinite,
            "h_{0,alpha} is infinite: no solution exists for any c"};
  }
  Trajectory t = shoot(spec, c, limits);
  if (!t.connects()) {
    std::string detail = "c = " + std::to_string(c) + " is subcritical: " + t.reason;
    return {std::nullopt, NoSolutionReason::Subcritical, detail};
  }
  return {std::move(t), NoSolutionReason::None, {}};
}

ComparisonResult compare_upper(const ProblemSpec& spec, double c, const Trajectory& base,
                               double u0, double margin, std::optional<double> u_end) {
  if (margin < 0.0) throw Error("compare_upper: margin must be nonnegative");
  const double top = base.curve().x_max();
  const double stop = u_end.value_or(top);
  if (!(u0 >= base.curve().x_min() && u0 < stop && stop <= top)) {
    throw Error("compare_upper: need u_min <= u0 < u_end <= top of trajectory");
  }
  ode::Options opt = ode_options(spec.numerics);
  opt.initial_step = 1e-4;
  ComparisonResult out;
  out.max_excess = -std::numeric_limits<double>::infinity();
  auto rhs = [&](double u, double y) { return shooting_rhs(spec, c, u, y) + margin; };
  ode::integrate(rhs, u0, base.z(u0), stop, opt, [&](double u, double y, double) {
    const double z = base.z(u);
    out.max_excess = std::max(out.max_excess, z - y);
    out.max_abs_difference = std::max(out.max_abs_difference, std::fabs(z - y));
    ++out.checked_points;
    return true;
  });
  out.holds = out.max_excess <= kComparisonSlack;
  return out;
}

double volterra_residual(const ProblemSpec& spec, const Trajectory& traj, double a, double b,
                         int points) {
  const double za = traj.z(a);
  double integral = 0.0;
  double worst = 0.0;
  double prev = a;
  auto integrand = [&](double s) { return shooting_rhs(spec, traj.c, s, traj.z(s)); };
  for (int i = 1; i < points; ++i) {
    const double u = a + (b - a) * i / (points - 1);
    integral += quad::integrate(integrand, prev, u, {1e-13, 1e-13, 2000}).value;
    worst = std::max(worst, std::fabs(traj.z(u) - za - integral));
    prev = u;
  }
  return worst;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  out << "u,z,dz\n";
  for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
    out << it->u << ',' << it->z << ',' << it->dz << '\n';
  }
  return out.str();
}

std::string trajectory_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["c"] = traj.c;
  j["classification"] = to_string(traj.classification);
  j["reason"] = traj.reason;
  j["start"] = to_string(traj.start);
  j["delta_start"] = traj.delta_start;
  j["u_min"] = traj.u_min;
  j["z_at_umin"] = traj.z_at_umin;
  j["slope_at_one"] = traj.slope_at_one;
  j["slope_at_zero"] = traj.slope_at_zero ? nlohmann::ordered_json(*traj.slope_at_zero)
                                       : nlohmann::ordered_json();
  j["matched_root"] = traj.matched_root ? nlohmann::ordered_json(*traj.matched_root)
                                     : nlohmann::ordered_json();
  j["slope_matches_root"] = traj.slope_matches_root;
  j["decade_growth"] = traj.decade_growth;
  j["eta0_roots"] = traj.eta0.roots;
  j["samples"] = traj.samples.size();
  j["integrator"] = {{"accepted", traj.stats.accepted},
                     {"rejected", traj.stats.rejected},
                     {"min_step", traj.stats.min_step}};
  return j.dump(2);
}

}  // namespace singfront
