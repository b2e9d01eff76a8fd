#pragma once

// Backward shooting for  z' = c g(u) - f(u) - h(u)/z^alpha  from the
// asymptotic start at u = 1 down to u_min. The backward direction contracts
// neighbouring trajectories, so the trajectory leaving (1, 0) is computed
// stably; it is the solution exactly when it also reaches z(0+) = 0.

#include <optional>
#include <string>
#include <vector>

#include "singfront/asymptotics.hpp"
#include "singfront/interp.hpp"
#include "singfront/model.hpp"
#include "singfront/ode.hpp"

namespace singfront {

enum class Classification { ConnectsToZero, PositiveLimit };

enum class StartKind {
  LinearSeries,     // z = s delta with s the positive root of eta1
  DominantBalance,  // h1 = -inf: z = ((a+1) int_{1-delta}^1 h)^(1/(a+1))
  Degenerate,       // h1 = 0 with slope 0: z = (h/(c g(1) - f(1)))^(1/a),
                    // or delta^((a+2)/(a+1)) when c g(1) - f(1) <= 0
};

const char* to_string(Classification c);
const char* to_string(StartKind k);

struct TrajectorySample {
  double u = 0.0;
  double z = 0.0;
  double dz = 0.0;
};

/// Endpoint limits shared by every shot on one spec.
struct EndLimits {
  SingularLimit zero;
  SingularLimit one;
};

/// Throws NoLimit when either limit cannot be established.
EndLimits end_limits(const ProblemSpec& spec);

struct Trajectory {
  double c = 0.0;
  /// u strictly descending from 1 - delta_start to u_min.
  std::vector<TrajectorySample> samples;
  Classification classification = Classification::PositiveLimit;
  std::string reason;
  double z_at_umin = 0.0;
  double u_min = 0.0;
  /// Start offset actually used; degenerate starts may move inward.
  double delta_start = 0.0;
  StartKind start = StartKind::LinearSeries;
  /// |z'(1)|: the eta1 root for a linear start, otherwise z(1-delta)/delta.
  double slope_at_one = 0.0;
  /// z(u_min)/u_min for connecting trajectories.
  std::optional<double> slope_at_zero;
  /// Nearest root of eta0 to slope_at_zero and whether it lies within 5e-3
  /// relative (relative to the largest root when the nearest root is 0).
  std::optional<double> matched_root;
  bool slope_matches_root = false;
  /// (z/u at u_min) / (z/u at 10 u_min): ~1 on connecting trajectories and
  /// ~10 once z has flattened onto a positive limit. Diagnostic only; the
  /// classification compares z/u at u_min with the largest root of eta0.
  double decade_growth = 0.0;
  EtaRoots eta0;
  /// Step counts cover both phases; step sizes refer to the u phase.
  ode::Stats stats;
  int retries = 0;

  bool connects() const { return classification == Classification::ConnectsToZero; }

  /// Monotone cubic interpolant of z over [u_min, 1 - delta_start].
  const HermiteInterpolant& curve() const { return curve_; }
  double z(double u) const { return curve_(u); }

  void build_curve();

 private:
  HermiteInterpolant curve_;
};

/// Right-hand side c g(u) - f(u) - h(u)/z^alpha; for u < 1e-3 the singular
/// term is evaluated as (h/u^alpha) (u/z)^alpha. NaN for z <= 0.
double shooting_rhs(const ProblemSpec& spec, double c, double u, double z);

/// Integrates backward and classifies. Throws ExistenceFails (h0 infinite),
/// StartUndefined, StepUnderflow, ZeroCrossing or Ambiguous.
Trajectory shoot(const ProblemSpec& spec, double c);
Trajectory shoot(const ProblemSpec& spec, double c, const EndLimits& limits);
Trajectory shoot(const ProblemSpec& spec, double c, const EndLimits& limits,
                 const Numerics& numerics);

enum class NoSolutionReason { None, LimitInfinite, Subcritical };
const char* to_string(NoSolutionReason r);

struct SolveOutcome {
  std::optional<Trajectory> trajectory;
  NoSolutionReason reason = NoSolutionReason::None;
  std::string detail;

  bool solved() const { return trajectory.has_value(); }
};

/// The unique solution at speed c, or the reason none exists.
SolveOutcome solve(const ProblemSpec& spec, double c);
SolveOutcome solve(const ProblemSpec& spec, double c, const EndLimits& limits);

struct ComparisonResult {
  bool holds = false;
  /// max over checked u of z(u) - y(u); <= 1e-8 when holds.
  double max_excess = 0.0;
  double max_abs_difference = 0.0;
  int checked_points = 0;
};

/// Integrates y' = rhs + margin forward from (u0, base.z(u0)) up to u_end
/// (default: the top of the trajectory) and checks base.z <= y + 1e-8.
ComparisonResult compare_upper(const ProblemSpec& spec, double c, const Trajectory& base,
                               double u0, double margin, std::optional<double> u_end = {});

/// max_u |z(u) - z(a) - int_a^u rhs(s, z(s)) ds| over a uniform grid on [a, b].
double volterra_residual(const ProblemSpec& spec, const Trajectory& traj, double a = 0.1,
                         double b = 0.9, int points = 33);

/// "u,z,dz" rows in ascending u.
std::string trajectory_csv(const Trajectory& traj);

/// Metadata and classification (no samples).
std::string trajectory_json(const Trajectory& traj);

}  // namespace singfront
