#pragma once

// Explicit finite-difference simulation of
//   v_t = v_xx + rho(v) - f(v) v_x
// on [0, length] with Neumann ends and step initial data, and the speed of
// the resulting front.

#include <string>
#include <vector>

#include "singfront/model.hpp"

namespace singfront {

struct SimConfig {
  double length = 300.0;
  double dx = 0.1;
  double dt = 0.0;  // 0: 0.9 dx^2 / 2
  double t_final = 150.0;
  double level = 0.5;  // front is where v crosses this level
  double x0 = 2.0;     // v = 1 for x < x0, 0 beyond
  double output_interval = 0.5;

  double time_step() const { return dt > 0.0 ? dt : 0.9 * dx * dx / 2.0; }
};

/// Reads a [simulation] section (keys named as the fields above).
SimConfig parse_sim_config(std::string_view text);
SimConfig load_sim_config(const std::string& path);

struct FrontSample {
  double t = 0.0;
  double x = 0.0;
};

struct SpeedMeasurement {
  std::vector<FrontSample> positions;
  double speed = 0.0;
  double intercept = 0.0;
  /// RMS deviation of the fitted positions divided by the fit window length.
  double residual = 0.0;
  int fitted_points = 0;
  long steps = 0;
  double dt = 0.0;
  std::vector<double> final_state;  // v on x_i = i dx
  double dx = 0.0;
};

/// Throws ValidationError for specs outside the alpha = 1, g = 1, D = 1
/// class or an invalid config, StabilityViolation when dt breaks the
/// explicit bound, FrontLost when the crossing leaves the domain and
/// NumericalError when the linear fit is too poor to report.
SpeedMeasurement simulate(const ProblemSpec& spec, const SimConfig& cfg);

/// "x,v" rows of the final state.
std::string snapshot_csv(const SpeedMeasurement& m);
std::string measurement_json(const SpeedMeasurement& m, const SimConfig& cfg);

}  // namespace singfront
