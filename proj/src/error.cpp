#include "fracdyn/error.hpp"

namespace fracdyn {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::DomainError: return "DomainError";
    case Errc::NotAccumulating: return "NotAccumulating";
    case Errc::ConfigError: return "ConfigError";
    case Errc::AccuracyError: return "AccuracyError";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotSpiraling: return "NotSpiraling";
    case Errc::NoCrossings: return "NoCrossings";
    case Errc::BlowUp: return "BlowUp";
    case Errc::InsufficientScales: return "InsufficientScales";
    case Errc::DegenerateSequence: return "DegenerateSequence";
    case Errc::UnderResolved: return "UnderResolved";
    case Errc::RasterBudget: return "RasterBudget";
    case Errc::NoBranch: return "NoBranch";
    case Errc::FoldResolution: return "FoldResolution";
    case Errc::NoFiber: return "NoFiber";
    case Errc::SlowSingularity: return "SlowSingularity";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::BracketFailure: return "BracketFailure";
    case Errc::TruncatedSequence: return "TruncatedSequence";
    case Errc::NotContact: return "NotContact";
    case Errc::NotHopf: return "NotHopf";
    case Errc::AssumptionViolated: return "AssumptionViolated";
    case Errc::NoBalancedLevel: return "NoBalancedLevel";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::Ambiguous: return "Ambiguous";
  }
  return "Unknown";
}

ExitCode exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError:
    case Errc::UnknownVariable:
    case Errc::DomainError:
    case Errc::NotAccumulating:
    case Errc::ConfigError:
      return ExitCode::Domain;
    case Errc::AccuracyError:
    case Errc::StepUnderflow:
    case Errc::BudgetExceeded:
    case Errc::NotSpiraling:
    case Errc::NoCrossings:
    case Errc::BlowUp:
    case Errc::InsufficientScales:
    case Errc::DegenerateSequence:
    case Errc::UnderResolved:
    case Errc::RasterBudget:
    case Errc::NoBranch:
    case Errc::FoldResolution:
    case Errc::NoFiber:
    case Errc::SlowSingularity:
    case Errc::QuadratureFailure:
    case Errc::BracketFailure:
    case Errc::TruncatedSequence:
      return ExitCode::Numerical;
    case Errc::NotContact:
    case Errc::NotHopf:
    case Errc::AssumptionViolated:
    case Errc::NoBalancedLevel:
    case Errc::MultipleRoots:
      return ExitCode::Assumption;
    case Errc::Ambiguous:
      return ExitCode::AmbiguousSnap;
  }
  return ExitCode::Numerical;
}

}  // namespace fracdyn
