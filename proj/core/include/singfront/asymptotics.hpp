#pragma once

// Endpoint analysis: the singular limits
//   h0 = lim_{u->0+} h(u) / u^alpha          in [0, +inf]
//   h1 = lim_{u->1-} -h(u) / (1-u)^alpha     in [-inf, 0]
// and the slope polynomials whose nonnegative roots are the only possible
// values of |z'| at the endpoints:
//   eta0(t) = t^(a+1) - (c g(0) - f(0)) t^a + h0
//   eta1(s) = s^(a+1) + (c g(1) - f(1)) s^a + h1

#include <optional>
#include <string>
#include <vector>

#include "singfront/model.hpp"

namespace singfront {

enum class EndSide { Zero, One };
enum class Provenance { AnalyticOverride, Extrapolated };

struct SingularLimit {
  /// Possibly +inf (zero end) or -inf (one end).
  double value = 0.0;
  EndSide side = EndSide::Zero;
  Provenance provenance = Provenance::Extrapolated;
  /// Sampled ratios along the dyadic ladder, k = 10..40.
  std::vector<double> diagnostics;
  /// Set when an override disagrees with the sampled tail by > 1e-3 relative.
  std::optional<std::string> warning;

  bool finite() const;
};

/// h(u)/u^alpha along u_k = 2^-k; the override wins when present.
/// Throws NoLimit when the tail oscillates.
SingularLimit singular_limit_zero(const ProblemSpec& spec);

/// -h(u)/(1-u)^alpha along u_k = 1 - 2^-k; mirror of singular_limit_zero.
SingularLimit singular_limit_one(const ProblemSpec& spec);

/// Extrapolates a sampled ladder r_k (k = 10..40, step size halving) to its
/// limit. `sign` is +1 for a [0, +inf] limit and -1 for [-inf, 0]. Exposed
/// for testing.
double extrapolate_ladder(const std::vector<double>& ratios, int sign);

/// M(t) = t^(alpha+1) - beta t^alpha + gamma for t >= 0.
double m_function(double alpha, double beta, double gamma, double t);

struct MMin {
  double argmin = 0.0;
  double min_value = 0.0;
};

/// Closed-form minimum of M over t >= 0.
MMin m_min(double alpha, double beta, double gamma);

struct EtaRoots {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  /// Distinct nonnegative roots, ascending; a double root appears once.
  std::vector<double> roots;
  double min_value = 0.0;
  double argmin = 0.0;
};

/// Every t >= 0 with M(t) = 0.
EtaRoots eta_roots(double alpha, double beta, double gamma);

/// Roots of eta0 at speed c for `spec`, given h0 (finite).
EtaRoots eta0_roots(const ProblemSpec& spec, double c, double h0);

struct EndSlope {
  double slope = 0.0;
  /// h1 == 0: the root set contains 0 and the start is degenerate.
  bool degenerate = false;
};

/// Unique positive root of s^(a+1) + (c g(1) - f(1)) s^a - |h1|.
/// Throws LimitInfinite when h1 = -inf.
EndSlope eta1_slope(double alpha, double c, const ProblemSpec& spec, double h1);
EndSlope eta1_slope(double alpha, double c, const ProblemSpec& spec);

}  // namespace singfront
