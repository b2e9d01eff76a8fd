#pragma once

// Travelling-wave profile u(t) from a solution z(u), using u' = -z(u)/D(u),
// i.e.  t(u) = -int_{u_n}^u D(s)/z(s) ds  with t(u_n) = 0.

#include <optional>
#include <string>
#include <vector>

#include "singfront/interp.hpp"
#include "singfront/model.hpp"
#include "singfront/shooting.hpp"

namespace singfront {

struct ProfileSample {
  double t = 0.0;
  double u = 0.0;
};

struct WaveProfile {
  /// t increasing, u decreasing from 1 - eps_prof to eps_prof.
  std::vector<ProfileSample> samples;
  double c = 0.0;
  double normalization_u = 0.5;  // t = 0 here
  double eps_prof = 0.0;
  std::string diffusion;  // D as written, "1" by default
  double exponent = 1.0;  // q in u' = -(z/D)^q
  bool experimental = false;

  /// u at time t (monotone cubic through the samples).
  double u_at(double t) const { return by_t_(t); }
  /// t at level u.
  double t_at(double u) const { return by_u_(u); }

  void build_interpolants(const HermiteInterpolant& z, const Expr& diffusion_expr);

 private:
  HermiteInterpolant by_t_;
  HermiteInterpolant by_u_;
};

/// Throws NotASolution for a non-connecting trajectory and
/// ReductionUnsupported when alpha != 1 and no reduction exponent is set.
WaveProfile reconstruct(const Trajectory& traj, const ProblemSpec& spec,
                        std::optional<double> eps_prof = {}, double normalization_u = 0.5,
                        int points = 2001);

/// "t,u" rows in increasing t.
std::string profile_csv(const WaveProfile& profile);

/// c, normalization, D and reduction exponent.
std::string profile_json(const WaveProfile& profile);

}  // namespace singfront
