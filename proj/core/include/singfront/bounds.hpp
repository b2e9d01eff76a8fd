#pragma once

// Mean-value constants
//   G0 = inf_u (1/u) int_0^u g,   F0 = sup_u (1/u) int_0^u f,
//   H0 = sup_u (1/u) int_0^u h(s)/s^alpha ds
// and the two-sided estimate of the critical speed
//   f(0)/g(0) + (a+1)/g(0) (h0/a^a)^(1/(a+1))  <=  c*  <=
//   F0/G0     + (a+1)/G0   (H0/a^a)^(1/(a+1)).

#include <functional>
#include <optional>

#include "singfront/model.hpp"

namespace singfront {

struct SpeedBounds {
  double alpha = 1.0;
  double f0 = 0.0;
  double g0 = 0.0;
  double F0 = 0.0;
  double G0 = 0.0;
  double H0 = 0.0;
  double h0_alpha = 0.0;
  /// Where each extremum is attained (0 means the u -> 0+ limit won).
  double F0_at = 0.0;
  double G0_at = 0.0;
  double H0_at = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double quadrature_error_estimate = 0.0;

  /// True when lower and upper agree within `tol`.
  bool coincide(double tol) const;
};

/// (1/u) int_0^u w(s) / s^p ds for u in (0, 1]. Throws SingularDivergence
/// when p > 0 and w(s)/s^p is unbounded as s -> 0+.
double mean_value_curve(const std::function<double(double)>& w, double u, double singular_power,
                        double abs_tol = 1e-10);

/// F0, G0, H0 (plus f(0), g(0), h0). Requires a finite h0.
SpeedBounds constants(const ProblemSpec& spec);

/// constants() plus lower/upper. Throws ExistenceFails when h0 = +inf.
SpeedBounds estimate(const ProblemSpec& spec);

/// Lower bound alone; usable when h0 is finite even if H0 is not needed.
double lower_bound(double alpha, double f0, double g0, double h0);

struct ExistenceCertificate {
  /// psi(u) = L u is a lower solution of the integral form at speed c.
  double slope = 0.0;
  double m_value = 0.0;  // M_{beta,gamma}(L) < 0
  double beta = 0.0;
  double gamma = 0.0;
};

/// Linear lower-solution certificate for c strictly above the upper bound;
/// nullopt otherwise.
std::optional<ExistenceCertificate> certify_existence(const SpeedBounds& bounds, double c);
std::optional<ExistenceCertificate> certify_existence(const ProblemSpec& spec, double c);

}  // namespace singfront
