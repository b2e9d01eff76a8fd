#pragma once

// Problem instances of  z' = c g(u) - f(u) - h(u) / z^alpha  on (0, 1),
// z(0+) = z(1-) = 0, z > 0, and their validation against the standing
// hypotheses: h(0) = h(1) = 0, h > 0 inside, g(0) > 0 and int_0^u g > 0.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singfront/expr.hpp"

namespace singfront {

/// Resolution and tolerance knobs; every field can be set in [numerics].
struct Numerics {
  int validation_points = 2001;   // interior points of the hypothesis grid
  double h_zero_tol = 1e-12;      // |h(0)|, |h(1)| allowance
  double quad_tol = 1e-10;        // absolute quadrature tolerance
  int bound_grid = 4097;          // extremum search grid for F0, G0, H0
  double golden_tol = 1e-10;      // golden-section polish width
  double delta_start = 1e-6;      // shooting starts at u = 1 - delta_start
  double u_min = 1e-8;            // shooting stops at u_min
  double tol_zero = 1e-7;         // z(u_min) below this counts as zero
  double rtol = 1e-10;            // Runge-Kutta relative tolerance
  double atol = 1e-12;            // Runge-Kutta absolute tolerance
  double min_step = 1e-14;
  double tol_c = 1e-6;            // bisection width for c*
  double eps_prof = 1e-4;         // profile truncation

  bool operator==(const Numerics&) const = default;
};

struct ProblemSpec {
  std::string name;
  double alpha = 1.0;
  Expr f;
  Expr g;
  /// Always populated; equals D * rho when the pair was supplied.
  Expr h;
  /// Diffusion D (constant 1 unless supplied) and, when given, reaction rho.
  Expr diffusion = Expr::constant(1.0);
  std::optional<Expr> reaction;

  std::string f_source;
  std::string g_source;
  std::string h_source;         // empty when (D, rho) were supplied
  std::string diffusion_source; // empty unless supplied
  std::string reaction_source;

  /// Analytic lim h/u^alpha at 0 (may be +inf) and lim -h/(1-u)^alpha at 1
  /// (may be -inf).
  std::optional<double> h0_alpha_override;
  std::optional<double> h1_alpha_override;

  /// Experimental: exponent q in u' = -(z / D)^q used by profile
  /// reconstruction when alpha != 1.
  std::optional<double> reduction_exponent;

  Numerics numerics;

  bool uses_diffusion_pair() const { return reaction.has_value(); }
};

struct Violation {
  std::string hypothesis;  // e.g. "h(0)=0", "h>0 on (0,1)", "g(0)>0"
  double witness_u = 0.0;
  double value = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
};

/// Builds a spec from expression sources. Exactly one of `h` or the pair
/// (`diffusion`, `reaction`) must be non-empty. Does not validate.
ProblemSpec make_spec(double alpha, std::string_view f, std::string_view g, std::string_view h,
                      std::string_view diffusion = {}, std::string_view reaction = {});

/// Parses problem-file text. Throws ParseError; does not validate.
ProblemSpec parse_problem(std::string_view text);

/// Reads, parses and validates. Throws ParseError or ValidationError (the
/// message names the first violated hypothesis and its witness point).
ProblemSpec load(const std::string& path);

/// Problem-file text that parse_problem reads back to an equivalent spec.
std::string serialize(const ProblemSpec& spec);

/// Checks every hypothesis on the validation grid. Empty iff all hold.
std::vector<Violation> validate(const ProblemSpec& spec);

/// validate() plus non-fatal findings (integral of g within 1e-9 of zero,
/// D vanishing somewhere).
ValidationReport audit(const ProblemSpec& spec);

/// Throws ValidationError describing the first violation, if any.
void require_valid(const ProblemSpec& spec);

/// Value of int_0^u g(s) ds on the uniform grid u_i = i / (n + 1), i = 1..n+1.
std::vector<double> cumulative_integral(const Expr& w, int interior_points, double abs_tol);

}  // namespace singfront
