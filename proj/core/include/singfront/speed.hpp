#pragma once

// Critical speed c* by bisection of the shooting classifier inside the
// bracket given by the mean-value bounds.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singfront/bounds.hpp"
#include "singfront/shooting.hpp"

namespace singfront {

struct SpeedResult {
  double c_star = 0.0;
  /// (non-admissible, admissible) after every bisection step.
  std::vector<std::pair<double, double>> bracket_history;
  SpeedBounds bounds;
  int iterations = 0;  // number of shots
  double tolerance = 0.0;
  /// True when the bounds coincided and no shooting was done.
  bool from_bounds = false;
  bool bracket_extended = false;
  /// Shots at c_star + tolerance (connects) and c_star - tolerance
  /// (positive limit; absent when that speed is below the lower bound).
  std::optional<Trajectory> above;
  std::optional<Trajectory> below;
};

/// Throws ExistenceFails when h0 is infinite and BracketFailure when the
/// classifier contradicts the half-line structure.
SpeedResult critical_speed(const ProblemSpec& spec, double tol_c);
inline SpeedResult critical_speed(const ProblemSpec& spec) {
  return critical_speed(spec, spec.numerics.tol_c);
}

struct Admissibility {
  bool admissible = false;
  std::optional<Trajectory> trajectory;
  NoSolutionReason reason = NoSolutionReason::None;
  std::string detail;
  /// Lower-solution slope L, present when c exceeds the upper bound.
  std::optional<ExistenceCertificate> certificate;
};

Admissibility admissible(const ProblemSpec& spec, double c);

}  // namespace singfront
