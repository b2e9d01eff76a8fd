#include "singfront/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "singfront/config.hpp"
#include "singfront/error.hpp"
#include "singfront/quadrature.hpp"

namespace singfront {

namespace {

constexpr double kIntegralMargin = 1e-9;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> read_limit(const config::Section& s, const std::string& key,
                                  const std::string& infinite_word, double infinite_value) {
  auto it = s.find(key);
  if (it == s.end()) return std::nullopt;
  if (it->second.quoted) {
    if (it->second.text == infinite_word) return infinite_value;
    throw ParseError("line " + std::to_string(it->second.line) + ": key '" + key +
                     "' expects a number or \"" + infinite_word + "\"");
  }
  return it->second.as_number(key);
}

void read_numerics(const config::Section& s, Numerics& n) {
  config::require_known_keys(s, "numerics",
                             {"validation_points", "h_zero_tol", "quad_tol", "bound_grid",
                              "golden_tol", "delta_start", "u_min", "tol_zero", "rtol", "atol",
                              "min_step", "tol_c", "eps_prof"});
  auto num = [&](const char* key, double& out) {
    if (auto it = s.find(key); it != s.end()) out = it->second.as_number(key);
  };
  auto count = [&](const char* key, int& out) {
    if (auto it = s.find(key); it != s.end()) {
      const double v = it->second.as_number(key);
      if (v < 2 || v != std::floor(v)) {
        throw ParseError("line " + std::to_string(it->second.line) + ": '" + key +
                         "' must be an integer >= 2");
      }
      out = static_cast<int>(v);
    }
  };
  count("validation_points", n.validation_points);
  count("bound_grid", n.bound_grid);
  num("h_zero_tol", n.h_zero_tol);
  num("quad_tol", n.quad_tol);
  num("golden_tol", n.golden_tol);
  num("delta_start", n.delta_start);
  num("u_min", n.u_min);
  num("tol_zero", n.tol_zero);
  num("rtol", n.rtol);
  num("atol", n.atol);
  num("min_step", n.min_step);
  num("tol_c", n.tol_c);
  num("eps_prof", n.eps_prof);
  const double positives[] = {n.h_zero_tol, n.quad_tol, n.golden_tol, n.delta_start, n.u_min,
                              n.tol_zero,   n.rtol,     n.atol,       n.min_step,    n.tol_c,
                              n.eps_prof};
  for (double v : positives) {
    if (!(v > 0.0)) throw ParseError("[numerics] tolerances must be positive");
  }
  if (n.delta_start >= 0.5 || n.u_min >= 0.5 || n.eps_prof >= 0.5) {
    throw ParseError("[numerics] delta_start, u_min and eps_prof must be below 0.5");
  }
}

Expr parse_field(std::string_view key, std::string_view src) {
  try {
    return parse(src);
  } catch (const ParseError& e) {
    throw ParseError("expression '" + std::string(key) + "': " + e.what(), e.position());
  }
}

}  // namespace

ProblemSpec make_spec(double alpha, std::string_view f, std::string_view g, std::string_view h,
                      std::string_view diffusion, std::string_view reaction) {
  ProblemSpec spec;
  spec.alpha = alpha;
  spec.f_source = std::string(f);
  spec.g_source = std::string(g);
  spec.f = parse_field("f", f);
  spec.g = parse_field("g", g);
  const bool pair = !diffusion.empty() || !reaction.empty();
  if (!h.empty() && pair) {
    throw ParseError("both h and (D, rho) supplied; give exactly one");
  }
  if (pair) {
    if (diffusion.empty() || reaction.empty()) {
      throw ParseError("D and rho must be supplied together");
    }
    spec.diffusion_source = std::string(diffusion);
    spec.reaction_source = std::string(reaction);
    spec.diffusion = parse_field("D", diffusion);
    spec.reaction = parse_field("rho", reaction);
    spec.h = Expr::binary(Op::Mul, spec.diffusion, *spec.reaction);
  } else {
    if (h.empty()) throw ParseError("missing h (or D and rho)");
    spec.h_source = std::string(h);
    spec.h = parse_field("h", h);
  }
  return spec;
}

ProblemSpec parse_problem(std::string_view text) {
  const config::Document doc = config::parse(text);
  config::require_known(doc, {"problem", "numerics"});
  const config::Section& p = doc.section("problem");
  config::require_known_keys(p, "problem",
                             {"name", "alpha", "f", "g", "h", "D", "rho", "h0_alpha", "h1_alpha",
                              "reduction_exponent"});
  auto str = [&](const char* key) -> std::string {
    auto it = p.find(key);
    return it == p.end() ? std::string() : it->second.as_string(key);
  };
  auto it_alpha = p.find("alpha");
  if (it_alpha == p.end()) throw ParseError("[problem] is missing 'alpha'");
  if (str("f").empty() || str("g").empty()) throw ParseError("[problem] needs both 'f' and 'g'");

  ProblemSpec spec = make_spec(it_alpha->second.as_number("alpha"), str("f"), str("g"), str("h"),
                               str("D"), str("rho"));
  spec.name = str("name");
  const double inf = std::numeric_limits<double>::infinity();
  spec.h0_alpha_override = read_limit(p, "h0_alpha", "infinite", inf);
  spec.h1_alpha_override = read_limit(p, "h1_alpha", "neg_infinite", -inf);
  if (spec.h0_alpha_override && !(*spec.h0_alpha_override >= 0.0)) {
    throw ParseError("h0_alpha override must be >= 0 or \"infinite\"");
  }
  if (spec.h1_alpha_override && !(*spec.h1_alpha_override <= 0.0)) {
    throw ParseError("h1_alpha override must be <= 0 or \"neg_infinite\"");
  }
  if (auto it = p.find("reduction_exponent"); it != p.end()) {
    spec.reduction_exponent = it->second.as_number("reduction_exponent");
    if (!(*spec.reduction_exponent > 0.0)) throw ParseError("reduction_exponent must be positive");
  }
  read_numerics(doc.section("numerics"), spec.numerics);
  return spec;
}

ProblemSpec load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  ProblemSpec spec = parse_problem(text.str());
  require_valid(spec);
  return spec;
}

std::string serialize(const ProblemSpec& spec) {
  std::ostringstream out;
  out << "[problem]\n";
  if (!spec.name.empty()) out << "name = " << config::quote(spec.name) << "\n";
  out << "alpha = " << fmt_exact(spec.alpha) << "\n";
  out << "f = " << config::quote(spec.f_source) << "\n";
  out << "g = " << config::quote(spec.g_source) << "\n";
  if (spec.uses_diffusion_pair()) {
    out << "D = " << config::quote(spec.diffusion_source) << "\n";
    out << "rho = " << config::quote(spec.reaction_source) << "\n";
  } else {
    out << "h = " << config::quote(spec.h_source) << "\n";
  }
  if (spec.h0_alpha_override) {
    if (std::isinf(*spec.h0_alpha_override)) {
      out << "h0_alpha = \"infinite\"\n";
    } else {
      out << "h0_alpha = " << fmt_exact(*spec.h0_alpha_override) << "\n";
    }
  }
  if (spec.h1_alpha_override) {
    if (std::isinf(*spec.h1_alpha_override)) {
      out << "h1_alpha = \"neg_infinite\"\n";
    } else {
      out << "h1_alpha = " << fmt_exact(*spec.h1_alpha_override) << "\n";
    }
  }
  if (spec.reduction_exponent) {
    out << "reduction_exponent = " << fmt_exact(*spec.reduction_exponent) << "\n";
  }
  const Numerics& n = spec.numerics;
  out << "\n[numerics]\n"
      << "validation_points = " << n.validation_points << "\n"
      << "h_zero_tol = " << fmt_exact(n.h_zero_tol) << "\n"
      << "quad_tol = " << fmt_exact(n.quad_tol) << "\n"
      << "bound_grid = " << n.bound_grid << "\n"
      << "golden_tol = " << fmt_exact(n.golden_tol) << "\n"
      << "delta_start = " << fmt_exact(n.delta_start) << "\n"
      << "u_min = " << fmt_exact(n.u_min) << "\n"
      << "tol_zero = " << fmt_exact(n.tol_zero) << "\n"
      << "rtol = " << fmt_exact(n.rtol) << "\n"
      << "atol = " << fmt_exact(n.atol) << "\n"
      << "min_step = " << fmt_exact(n.min_step) << "\n"
      << "tol_c = " << fmt_exact(n.tol_c) << "\n"
      << "eps_prof = " << fmt_exact(n.eps_prof) << "\n";
  return out.str();
}

std::vector<double> cumulative_integral(const Expr& w, int interior_points, double abs_tol) {
  const int segments = interior_points + 1;
  std::vector<double> out(static_cast<std::size_t>(segments));
  const quad::Options opt{abs_tol, 1e-13, 2000};
  double acc = 0.0;
  for (int i = 0; i < segments; ++i) {
    const double a = static_cast<double>(i) / segments;
    const double b = static_cast<double>(i + 1) / segments;
    acc += quad::integrate([&](double s) { return w(s); }, a, b, opt).value;
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

ValidationReport audit(const ProblemSpec& spec) {
  ValidationReport report;
  auto& v = report.violations;
  const Numerics& n = spec.numerics;

  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    v.push_back({"alpha>0", 0.0, spec.alpha, "alpha = " + fmt(spec.alpha) + " must be positive"});
  }

  const double h0 = spec.h(0.0);
  if (std::fabs(h0) > n.h_zero_tol) {
    v.push_back({"h(0)=0", 0.0, h0, "h(0)=0 fails (h(0)=" + fmt(h0) + ")"});
  }
  const double h1 = spec.h(1.0);
  if (std::fabs(h1) > n.h_zero_tol) {
    v.push_back({"h(1)=0", 1.0, h1, "h(1)=0 fails (h(1)=" + fmt(h1) + ")"});
  }

  const int points = n.validation_points;
  const double denom = points + 1;
  double worst_h = std::numeric_limits<double>::infinity();
  double worst_h_u = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double u = i / denom;
    const double hv = spec.h(u);
    if (hv < worst_h) {
      worst_h = hv;
      worst_h_u = u;
    }
  }
  if (!(worst_h > 0.0)) {
    v.push_back({"h>0 on (0,1)", worst_h_u, worst_h,
                 "h(" + fmt(worst_h_u) + ") = " + fmt(worst_h) + " is not positive"});
  }

  const double g0 = spec.g(0.0);
  if (!(g0 > 0.0)) {
    v.push_back({"g(0)>0", 0.0, g0, "g(0) = " + fmt(g0) + " <= 0"});
  }

  const std::vector<double> G = cumulative_integral(spec.g, points, n.quad_tol);
  double worst_G = std::numeric_limits<double>::infinity();
  double worst_G_u = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i] < worst_G) {
      worst_G = G[i];
      worst_G_u = static_cast<double>(i + 1) / denom;
    }
  }
  if (worst_G < -kIntegralMargin) {
    v.push_back({"int_0^u g>0", worst_G_u, worst_G,
                 "integral of g over [0, " + fmt(worst_G_u) + "] = " + fmt(worst_G) + " <= 0"});
  } else if (worst_G < kIntegralMargin) {
    report.warnings.push_back("integral of g over [0, " + fmt(worst_G_u) + "] = " + fmt(worst_G) +
                              " is within 1e-9 of zero; positivity is not numerically decidable");
  }

  if (spec.uses_diffusion_pair()) {
    for (int i = 1; i <= points; ++i) {
      const double u = i / denom;
      if (!(spec.diffusion(u) > 0.0)) {
        report.warnings.push_back("D(" + fmt(u) + ") is not positive");
        break;
      }
    }
  }
  return report;
}

std::vector<Violation> validate(const ProblemSpec& spec) { return audit(spec).violations; }

void require_valid(const ProblemSpec& spec) {
  const auto violations = validate(spec);
  if (!violations.empty()) {
    std::string msg = "hypothesis " + violations.front().hypothesis + " violated: " +
                      violations.front().message;
    for (std::size_t i = 1; i < violations.size(); ++i) {
      msg += "; " + violations[i].hypothesis + ": " + violations[i].message;
    }
    throw ValidationError(msg);
  }
}

}  // namespace singfront
