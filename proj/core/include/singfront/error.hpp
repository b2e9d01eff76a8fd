#pragma once

#include <stdexcept>
#include <string>

namespace singfront {

/// Base of every error thrown by the library. The CLI maps the concrete
/// type onto its exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or problem file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Evaluation produced a non-finite value or left the real domain.
class EvalDomainError : public Error {
 public:
  EvalDomainError(const std::string& what, std::string subexpression, double input)
      : Error(what), subexpression_(std::move(subexpression)), input_(input) {}

  const std::string& subexpression() const noexcept { return subexpression_; }
  double input() const noexcept { return input_; }

 private:
  std::string subexpression_;
  double input_;
};

/// A problem instance violates the standing hypotheses.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The singular limit h(u)/u^alpha could not be established.
class NoLimit : public Error {
 public:
  using Error::Error;
};

/// h_{0,alpha} is infinite: no front exists for any speed.
class ExistenceFails : public Error {
 public:
  using Error::Error;
};

class SingularDivergence : public Error {
 public:
  using Error::Error;
};

class LimitInfinite : public Error {
 public:
  using Error::Error;
};

/// Numerical failures of the integrators and classifiers.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StartUndefined : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroCrossing : public NumericalError {
 public:
  ZeroCrossing(const std::string& what, double u) : NumericalError(what), u_(u) {}
  double u() const noexcept { return u_; }

 private:
  double u_;
};

class Ambiguous : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FrontLost : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Front reconstruction requested from a trajectory that is not a solution.
class NotASolution : public Error {
 public:
  using Error::Error;
};

class ReductionUnsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace singfront
