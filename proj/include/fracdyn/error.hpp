#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracdyn {

/// Every failure the library can report. Each code belongs to exactly one
/// exit-code class (see exit_code()).
enum class Errc {
  // validation / domain
  SyntaxError,
  UnknownVariable,
  DomainError,
  NotAccumulating,
  ConfigError,
  // numerical failures
  AccuracyError,
  StepUnderflow,
  BudgetExceeded,
  NotSpiraling,
  NoCrossings,
  BlowUp,
  InsufficientScales,
  DegenerateSequence,
  UnderResolved,
  RasterBudget,
  NoBranch,
  FoldResolution,
  NoFiber,
  SlowSingularity,
  QuadratureFailure,
  BracketFailure,
  TruncatedSequence,
  // hypotheses of the slow-fast theory not met
  NotContact,
  NotHopf,
  AssumptionViolated,
  NoBalancedLevel,
  MultipleRoots,
  // lattice snapping
  Ambiguous,
};

enum class ExitCode : int {
  Ok = 0,
  Domain = 2,
  Numerical = 3,
  Assumption = 4,
  AmbiguousSnap = 5,
};

std::string_view errc_name(Errc code) noexcept;
ExitCode exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  ExitCode exit() const noexcept { return exit_code(code_); }

 private:
  Errc code_;
};

/// Malformed polynomial text; offset is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(Errc::SyntaxError, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Integration failure carrying the last good state.
class IntegrationError : public Error {
 public:
  IntegrationError(Errc code, const std::string& what, double t, double x, double y)
      : Error(code, what), t_(t), x_(x), y_(y) {}
  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double t_, x_, y_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fracdyn
