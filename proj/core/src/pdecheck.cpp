#include "singfront/pdecheck.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "singfront/config.hpp"
#include "singfront/error.hpp"

namespace singfront {

namespace {

constexpr double kResidualShare = 0.05;
constexpr double kResidualFloor = 0.01;

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void check_spec(const ProblemSpec& spec, int grid) {
  if (std::fabs(spec.alpha - 1.0) > 1e-12) {
    throw ValidationError("simulation needs alpha = 1 (got " + num(spec.alpha) + ")");
  }
  for (int i = 0; i <= grid; ++i) {
    const double u = static_cast<double>(i) / grid;
    if (std::fabs(spec.g(u) - 1.0) > 1e-12) {
      throw ValidationError("simulation needs g = 1; g(" + num(u) + ") = " + num(spec.g(u)));
    }
    if (std::fabs(spec.diffusion(u) - 1.0) > 1e-12) {
      throw ValidationError("simulation needs D = 1; D(" + num(u) + ") = " +
                            num(spec.diffusion(u)));
    }
  }
}

void check_config(const SimConfig& cfg) {
  if (!(cfg.length > 0.0 && cfg.dx > 0.0 && cfg.dx < cfg.length)) {
    throw ValidationError("simulation needs 0 < dx < length");
  }
  if (!(cfg.t_final > 0.0 && cfg.output_interval > 0.0)) {
    throw ValidationError("simulation needs positive t_final and output_interval");
  }
  if (!(cfg.level > 0.1 && cfg.level < 0.9)) {
    throw ValidationError("front level must lie in (0.1, 0.9)");
  }
  if (!(cfg.x0 > 0.0 && cfg.x0 < cfg.length)) {
    throw ValidationError("step position x0 must lie inside the domain");
  }
}

// Position where v first drops below `level`, scanning from the left.
std::optional<double> crossing(const std::vector<double>& v, double dx, double level) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] >= level && v[i + 1] < level) {
      const double w = (v[i] - level) / (v[i] - v[i + 1]);
      return (static_cast<double>(i) + w) * dx;
    }
  }
  return std::nullopt;
}

SimConfig from_document(const config::Document& doc) {
  config::require_known(doc, {"simulation"});
  SimConfig cfg;
  const auto it = doc.sections.find("simulation");
  if (it == doc.sections.end()) return cfg;
  const config::Section& s = it->second;
  config::require_known_keys(s, "simulation",
                             {"length", "dx", "dt", "t_final", "level", "x0", "output_interval"});
  auto read = [&](const char* key, double& field) {
    if (const auto v = s.find(key); v != s.end()) field = v->second.as_number(key);
  };
  read("length", cfg.length);
  read("dx", cfg.dx);
  read("dt", cfg.dt);
  read("t_final", cfg.t_final);
  read("level", cfg.level);
  read("x0", cfg.x0);
  read("output_interval", cfg.output_interval);
  return cfg;
}

// Piecewise-linear table of an expression on [0, 1]; direct evaluation
// outside.
class Table {
 public:
  Table(const Expr& e, int intervals) : expr_(e), n_(intervals), values_(intervals + 1) {
    for (int i = 0; i <= n_; ++i) values_[static_cast<std::size_t>(i)] = e(double(i) / n_);
  }

  double operator()(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) return expr_(v);
    const double x = v * n_;
    const int i = std::min(static_cast<int>(x), n_ - 1);
    const double w = x - i;
    const auto k = static_cast<std::size_t>(i);
    return (1.0 - w) * values_[k] + w * values_[k + 1];
  }

 private:
  const Expr& expr_;
  int n_;
  std::vector<double> values_;
};

}  // namespace

SimConfig parse_sim_config(std::string_view text) { return from_document(config::parse(text)); }

SimConfig load_sim_config(const std::string& path) {
  return from_document(config::read_file(path));
}

SpeedMeasurement simulate(const ProblemSpec& spec, const SimConfig& cfg) {
  check_config(cfg);
  check_spec(spec, 1000);
  const double dx = cfg.dx;
  const double dt = cfg.time_step();
  const double limit = 0.9 * dx * dx / 2.0;
  if (dt > limit * (1.0 + 1e-12)) {
    throw StabilityViolation("dt = " + num(dt) + " exceeds the explicit bound 0.9 dx^2/2 = " +
                             num(limit));
  }
  double f_max = 0.0;
  for (int i = 0; i <= 1000; ++i) f_max = std::max(f_max, std::fabs(spec.f(i / 1000.0)));
  if (f_max * dt > dx) {
    throw StabilityViolation("advection CFL violated: max|f| dt / dx = " + num(f_max * dt / dx));
  }

  const auto n = static_cast<std::size_t>(std::llround(cfg.length / dx)) + 1;
  std::vector<double> v(n), next(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) * dx < cfg.x0 ? 1.0 : 0.0;

  const Table reaction(spec.h, 1 << 16);
  const Table drift(spec.f, 1 << 16);
  SpeedMeasurement m;
  m.dt = dt;
  m.dx = dx;
  const double r = dt / (dx * dx);
  const long steps = std::lround(std::ceil(cfg.t_final / dt - 1e-9));
  const long every = std::max(1L, std::lround(cfg.output_interval / dt));
  auto record = [&](double t) {
    const auto x = crossing(v, dx, cfg.level);
    if (!x || *x >= cfg.length - dx) {
      throw FrontLost("level " + num(cfg.level) + " crossing left the domain at t = " + num(t));
    }
    m.positions.push_back({t, *x});
  };
  record(0.0);
  for (long k = 1; k <= steps; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i == 0 ? v[1] : v[i - 1];
      const double right = i + 1 == n ? v[n - 2] : v[i + 1];
      const double a = drift(v[i]);
      const double grad = a >= 0.0 ? (v[i] - left) / dx : (right - v[i]) / dx;
      next[i] = v[i] + r * (left - 2.0 * v[i] + right) + dt * (reaction(v[i]) - a * grad);
    }
    v.swap(next);
    if (k % every == 0 || k == steps) record(k * dt);
  }
  m.steps = steps;
  m.final_state = v;

  // Least squares on the second half of the run.
  const double t_end = m.positions.back().t;
  double st = 0, sx = 0, stt = 0, stx = 0;
  int count = 0;
  for (const auto& p : m.positions) {
    if (p.t < 0.5 * t_end) continue;
    st += p.t;
    sx += p.x;
    stt += p.t * p.t;
    stx += p.t * p.x;
    ++count;
  }
  if (count < 3) throw NumericalError("too few front samples in the fit window");
  const double den = count * stt - st * st;
  m.speed = (count * stx - st * sx) / den;
  m.intercept = (sx - m.speed * st) / count;
  double ss = 0.0;
  for (const auto& p : m.positions) {
    if (p.t < 0.5 * t_end) continue;
    const double e = p.x - (m.intercept + m.speed * p.t);
    ss += e * e;
  }
  m.fitted_points = count;
  m.residual = std::sqrt(ss / count) / (0.5 * t_end);
  if (m.residual > kResidualShare * std::max(std::fabs(m.speed), kResidualFloor)) {
    throw NumericalError("front position is not linear in time (residual " + num(m.residual) +
                         " against speed " + num(m.speed) + ")");
  }
  return m;
}

std::string snapshot_csv(const SpeedMeasurement& m) {
  std::ostringstream out;
  out.precision(17);
  out << "x,v\n";
  for (std::size_t i = 0; i < m.final_state.size(); ++i) {
    out << static_cast<double>(i) * m.dx << ',' << m.final_state[i] << '\n';
  }
  return out.str();
}

std::string measurement_json(const SpeedMeasurement& m, const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["speed"] = m.speed;
  j["intercept"] = m.intercept;
  j["residual"] = m.residual;
  j["fitted_points"] = m.fitted_points;
  j["steps"] = m.steps;
  j["config"] = {{"length", cfg.length}, {"dx", cfg.dx},         {"dt", m.dt},
                 {"t_final", cfg.t_final}, {"level", cfg.level}, {"x0", cfg.x0},
                 {"output_interval", cfg.output_interval}};
  nlohmann::ordered_json positions = nlohmann::ordered_json::array();
  for (const auto& p : m.positions) positions.push_back({p.t, p.x});
  j["positions"] = positions;
  return j.dump(2);
}

}  // namespace singfront
