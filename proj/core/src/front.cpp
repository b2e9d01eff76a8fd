#include "singfront/front.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "singfront/error.hpp"
#include "singfront/quadrature.hpp"

namespace singfront {

namespace {

// Levels on [eps, 1 - eps], descending, clustered at both ends.
std::vector<double> levels(double eps, int points) {
  std::vector<double> u(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double theta = std::numbers::pi * k / (points - 1);
    u[static_cast<std::size_t>(k)] = eps + (1.0 - 2.0 * eps) * 0.5 * (1.0 + std::cos(theta));
  }
  u.front() = 1.0 - eps;
  u.back() = eps;
  return u;
}

}  // namespace

void WaveProfile::build_interpolants(const HermiteInterpolant& z, const Expr& diffusion_expr) {
  std::vector<double> t, u, du;
  std::vector<double> ua, ta, dta;
  for (const auto& s : samples) {
    const double speed = std::pow(z(s.u) / diffusion_expr(s.u), exponent);
    t.push_back(s.t);
    u.push_back(s.u);
    du.push_back(-speed);
  }
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    ua.push_back(it->u);
    ta.push_back(it->t);
    dta.push_back(-1.0 / std::pow(z(it->u) / diffusion_expr(it->u), exponent));
  }
  by_t_ = HermiteInterpolant(std::move(t), std::move(u), std::move(du));
  by_u_ = HermiteInterpolant(std::move(ua), std::move(ta), std::move(dta));
}

WaveProfile reconstruct(const Trajectory& traj, const ProblemSpec& spec,
                        std::optional<double> eps_prof, double normalization_u, int points) {
  if (!traj.connects()) {
    throw NotASolution("trajectory at c = " + std::to_string(traj.c) +
                       " does not reach z(0+) = 0; there is no front to reconstruct");
  }
  WaveProfile p;
  p.c = traj.c;
  p.eps_prof = eps_prof.value_or(spec.numerics.eps_prof);
  p.normalization_u = normalization_u;
  p.diffusion = spec.diffusion_source.empty() ? "1" : spec.diffusion_source;
  if (std::fabs(spec.alpha - 1.0) > 1e-12) {
    if (!spec.reduction_exponent) {
      throw ReductionUnsupported("profile reconstruction for alpha = " +
                                 std::to_string(spec.alpha) +
                                 " needs an explicit reduction_exponent");
    }
    p.exponent = *spec.reduction_exponent;
    p.experimental = true;
  }
  const HermiteInterpolant& z = traj.curve();
  if (!(p.eps_prof > 0.0 && p.eps_prof < 0.5)) throw Error("eps_prof must lie in (0, 1/2)");
  if (p.eps_prof < z.x_min() || 1.0 - p.eps_prof > z.x_max()) {
    throw Error("eps_prof lies outside the computed trajectory [u_min, 1 - delta_start]");
  }
  if (!(normalization_u > p.eps_prof && normalization_u < 1.0 - p.eps_prof)) {
    throw Error("normalization level must lie inside (eps_prof, 1 - eps_prof)");
  }
  if (points < 3) throw Error("reconstruct: need at least 3 profile points");

  const Expr& D = spec.diffusion;
  const double q = p.exponent;
  auto dt_du = [&](double s) {
    const double zs = z(s);
    if (!(zs > 0.0)) throw NumericalError("z is not positive at u = " + std::to_string(s));
    return -std::pow(D(s) / zs, q);
  };
  const quad::Options opt{1e-13, 1e-12, 200};

  const std::vector<double> u = levels(p.eps_prof, points);
  // Cumulative integral of dt/du from u[0] along the descending levels.
  std::vector<double> t(u.size(), 0.0);
  std::size_t anchor = 0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    t[k] = t[k - 1] + quad::integrate(dt_du, u[k - 1], u[k], opt).value;
    if (u[k] >= normalization_u) anchor = k;
  }
  const double shift = t[anchor] + quad::integrate(dt_du, u[anchor], normalization_u, opt).value;
  p.samples.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) p.samples.push_back({t[k] - shift, u[k]});
  for (std::size_t k = 1; k < p.samples.size(); ++k) {
    if (!(p.samples[k].t > p.samples[k - 1].t)) {
      throw NumericalError("reconstructed profile is not strictly monotone near u = " +
                           std::to_string(p.samples[k].u));
    }
  }
  p.build_interpolants(z, D);
  return p;
}

std::string profile_csv(const WaveProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  out << "t,u\n";
  for (const auto& s : profile.samples) out << s.t << ',' << s.u << '\n';
  return out.str();
}

std::string profile_json(const WaveProfile& profile) {
  nlohmann::ordered_json j;
  j["c"] = profile.c;
  j["normalization"] = {{"u", profile.normalization_u}, {"t", 0.0}};
  j["diffusion"] = profile.diffusion;
  j["reduction_exponent"] = profile.exponent;
  j["experimental"] = profile.experimental;
  j["eps_prof"] = profile.eps_prof;
  j["points"] = profile.samples.size();
  if (!profile.samples.empty()) {
    j["t_range"] = {profile.samples.front().t, profile.samples.back().t};
  }
  return j.dump(2);
}

}  // namespace singfront
