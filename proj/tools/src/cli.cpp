#include "singfront_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "singfront/asymptotics.hpp"
#include "singfront/bounds.hpp"
#include "singfront/error.hpp"
#include "singfront/front.hpp"
#include "singfront/model.hpp"
#include "singfront/pdecheck.hpp"
#include "singfront/shooting.hpp"
#include "singfront/speed.hpp"

namespace singfront::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string file;
  bool json = false;
  bool quiet = false;
  std::string out;
  std::optional<double> c;
  std::optional<double> tol;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<double> delta_start;
  std::optional<double> u_min;
  std::optional<double> eps_prof;
  std::string sim_config;
};

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "+inf" : "-inf";
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
  if (!f) throw Error("failed while writing '" + path + "'");
}

ProblemSpec load_spec(const Options& o) {
  ProblemSpec spec = load(o.file);
  Numerics& n = spec.numerics;
  if (o.tol) n.tol_c = *o.tol;
  if (o.rtol) n.rtol = *o.rtol;
  if (o.atol) n.atol = *o.atol;
  if (o.delta_start) n.delta_start = *o.delta_start;
  if (o.u_min) n.u_min = *o.u_min;
  if (o.eps_prof) n.eps_prof = *o.eps_prof;
  return spec;
}

json spec_json(const ProblemSpec& s) {
  json j;
  j["name"] = s.name;
  j["alpha"] = s.alpha;
  j["f"] = s.f_source;
  j["g"] = s.g_source;
  if (s.uses_diffusion_pair()) {
    j["D"] = s.diffusion_source;
    j["rho"] = s.reaction_source;
  } else {
    j["h"] = s.h_source;
  }
  return j;
}

json limit_json(const SingularLimit& l) {
  json j;
  j["value"] = number(l.value);
  j["provenance"] = l.provenance == Provenance::AnalyticOverride ? "override" : "extrapolated";
  return j;
}

json bounds_json(const SpeedBounds& b) {
  json j;
  j["f0"] = b.f0;
  j["g0"] = b.g0;
  j["h0_alpha"] = number(b.h0_alpha);
  j["F0"] = b.F0;
  j["G0"] = b.G0;
  j["H0"] = b.H0;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  return j;
}

json trajectory_meta(const Trajectory& t) { return json::parse(trajectory_json(t)); }

json warnings_json(const ProblemSpec& spec, const std::vector<const SingularLimit*>& limits) {
  json w = json::array();
  for (const auto& msg : audit(spec).warnings) w.push_back(msg);
  for (const SingularLimit* l : limits) {
    if (l->warning) w.push_back(*l->warning);
  }
  return w;
}

// Human output is a flattened view of the report.
void print_flat(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      print_flat(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (j.is_array() && (j.size() > 8 || (!j.empty() && j.front().is_structured()))) {
    out << prefix << ": [" << j.size() << " entries]\n";
    return;
  }
  out << prefix << ": ";
  if (j.is_number_float()) {
    out << fmt(j.get<double>());
  } else if (j.is_string()) {
    out << j.get<std::string>();
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? ", " : "") << (j[i].is_number_float() ? fmt(j[i].get<double>()) : j[i].dump());
    }
  } else {
    out << j.dump();
  }
  out << '\n';
}

void emit(json report, const Options& o, std::chrono::steady_clock::time_point start,
          std::ostream& out) {
  report["timing_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.json) {
    out << report.dump(2) << '\n';
  } else if (!o.quiet) {
    print_flat(report, "", out);
  }
}

int analyze(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSpec spec = load_spec(o);
  const SingularLimit zero = singular_limit_zero(spec);
  const SingularLimit one = singular_limit_one(spec);
  json r;
  r["command"] = "analyze";
  r["spec"] = spec_json(spec);
  r["limits"] = {{"h0_alpha", limit_json(zero)}, {"h1_alpha", limit_json(one)}};
  if (!zero.finite()) {
    r["verdict"] = "NoFrontsForAnyC";
    r["reason"] = "h(u)/u^alpha is unbounded as u -> 0+";
  } else {
    r["bounds"] = bounds_json(estimate(spec));
    r["verdict"] = "FrontsExistAboveCStar";
  }
  r["warnings"] = warnings_json(spec, {&zero, &one});
  emit(r, o, start, out);
  return kOk;
}

int speed(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSpec spec = load_spec(o);
  const SpeedResult res = critical_speed(spec, spec.numerics.tol_c);
  json r;
  r["command"] = "speed";
  r["spec"] = spec_json(spec);
  r["bounds"] = bounds_json(res.bounds);
  r["c_star"] = res.c_star;
  r["tolerance"] = res.tolerance;
  r["iterations"] = res.iterations;
  r["from_bounds"] = res.from_bounds;
  r["bracket_extended"] = res.bracket_extended;
  if (!res.bracket_history.empty()) {
    r["bracket"] = {res.bracket_history.back().first, res.bracket_history.back().second};
  }
  json history = json::array();
  for (const auto& [lo, hi] : res.bracket_history) history.push_back({lo, hi});
  r["bracket_history"] = history;
  json cert;
  json files = json::array();
  auto certificate = [&](const char* key, const std::optional<Trajectory>& t) {
    if (!t) return;
    json c = {{"c", t->c}, {"classification", to_string(t->classification)}};
    if (!o.out.empty()) {
      const std::string path = o.out + "_" + key + ".csv";
      write_file(path, trajectory_csv(*t));
      c["file"] = path;
      files.push_back(path);
    }
    cert[key] = c;
  };
  certificate("above", res.above);
  certificate("below", res.below);
  r["certificate"] = cert.is_null() ? json::object() : cert;
  r["files"] = files;
  emit(r, o, start, out);
  return kOk;
}

int refuse(const SolveOutcome& s, double c, std::ostream& err) {
  err << "no solution at c = " << fmt(c) << ": " << to_string(s.reason) << ": " << s.detail
      << '\n';
  return kNoSolution;
}

int solve_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSpec spec = load_spec(o);
  const SolveOutcome s = solve(spec, *o.c);
  if (!s.solved()) return refuse(s, *o.c, err);
  const std::string csv = trajectory_csv(*s.trajectory);
  json r;
  r["command"] = "solve";
  r["spec"] = spec_json(spec);
  r["trajectory"] = trajectory_meta(*s.trajectory);
  r["files"] = json::array();
  if (!o.out.empty()) {
    write_file(o.out, csv);
    r["files"].push_back(o.out);
  } else if (!o.json) {
    out << csv;
    return kOk;
  }
  emit(r, o, start, out);
  return kOk;
}

int profile_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSpec spec = load_spec(o);
  const SolveOutcome s = solve(spec, *o.c);
  if (!s.solved()) return refuse(s, *o.c, err);
  const WaveProfile p = reconstruct(*s.trajectory, spec);
  const std::string csv = profile_csv(p);
  json r;
  r["command"] = "profile";
  r["spec"] = spec_json(spec);
  r["profile"] = json::parse(profile_json(p));
  r["files"] = json::array();
  if (!o.out.empty()) {
    write_file(o.out, csv);
    r["files"].push_back(o.out);
  } else if (!o.json) {
    out << csv;
    return kOk;
  }
  emit(r, o, start, out);
  return kOk;
}

int simulate_cmd(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSpec spec = load_spec(o);
  const SimConfig cfg = o.sim_config.empty() ? SimConfig{} : load_sim_config(o.sim_config);
  const SpeedMeasurement m = simulate(spec, cfg);
  json r;
  r["command"] = "simulate";
  r["spec"] = spec_json(spec);
  r["measurement"] = json::parse(measurement_json(m, cfg));
  r["files"] = json::array();
  if (!o.out.empty()) {
    write_file(o.out, snapshot_csv(m));
    r["files"].push_back(o.out);
  }
  emit(r, o, start, out);
  return kOk;
}

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      Options& o) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("problem", o.file, "Problem file")->required()->check(CLI::ExistingFile);
  sub->add_flag("--json", o.json, "Print the report as JSON");
  sub->add_flag("--quiet", o.quiet, "Suppress the human-readable report");
  sub->add_option("--out", o.out, "Output path (stem for speed certificates)");
  sub->add_option("--tol", o.tol, "Bisection tolerance for c*");
  sub->add_option("--rtol", o.rtol, "Integrator relative tolerance");
  sub->add_option("--atol", o.atol, "Integrator absolute tolerance");
  sub->add_option("--delta-start", o.delta_start, "Shooting start offset from u = 1");
  sub->add_option("--u-min", o.u_min, "Shooting end point");
  sub->add_option("--eps-prof", o.eps_prof, "Profile truncation level");
  return sub;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Travelling fronts of doubly singular boundary value problems", "singfront"};
  app.require_subcommand(1);
  Options o;
  CLI::App* analyze_app = add_command(app, "analyze", "Singular limits, speed bounds, verdict", o);
  CLI::App* speed_app = add_command(app, "speed", "Critical speed c*", o);
  CLI::App* solve_app = add_command(app, "solve", "Solution z(u) at speed c as CSV", o);
  CLI::App* profile_app = add_command(app, "profile", "Front profile u(t) at speed c as CSV", o);
  CLI::App* simulate_app = add_command(app, "simulate", "Front speed from the PDE", o);
  solve_app->add_option("--c", o.c, "Wave speed")->required();
  profile_app->add_option("--c", o.c, "Wave speed")->required();
  simulate_app->add_option("--sim-config", o.sim_config, "Simulation config file")
      ->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (analyze_app->parsed()) return analyze(o, out);
    if (speed_app->parsed()) return speed(o, out);
    if (solve_app->parsed()) return solve_cmd(o, out, err);
    if (profile_app->parsed()) return profile_cmd(o, out, err);
    if (simulate_app->parsed()) return simulate_cmd(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const EvalDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ReductionUnsupported& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NoLimit& e) {
    err << "error: " << e.what() << '\n';
    return kLimit;
  } catch (const SingularDivergence& e) {
    err << "error: " << e.what() << '\n';
    return kLimit;
  } catch (const LimitInfinite& e) {
    err << "error: " << e.what() << '\n';
    return kLimit;
  } catch (const ExistenceFails& e) {
    err << "no solution: " << e.what() << '\n';
    return kNoSolution;
  } catch (const NotASolution& e) {
    err << "no solution: " << e.what() << '\n';
    return kNoSolution;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace singfront::cli
