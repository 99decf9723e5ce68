#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expfun {

enum class ErrorCode {
  // Preconditions: bad inputs or a model outside the supported class.
  InvalidParameter,
  UnboundedVariationViolated,
  DomainError,
  NoPositiveRoot,
  ConditionHViolated,
  LaplaceParameterTooSmall,
  InvalidConfig,
  // Numerical failures.
  NonpositiveExponentValue,
  MaxTermsExceeded,
  PrecisionInsufficient,
  ExtrapolationDiverged,
  NumericalInconsistency,
  QuadratureFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnboundedVariationViolated: return "UnboundedVariationViolated";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::ConditionHViolated: return "ConditionHViolated";
    case ErrorCode::LaplaceParameterTooSmall: return "LaplaceParameterTooSmall";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonpositiveExponentValue: return "NonpositiveExponentValue";
    case ErrorCode::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::ExtrapolationDiverged: return "ExtrapolationDiverged";
    case ErrorCode::NumericalInconsistency: return "NumericalInconsistency";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
  }
  return "Unknown";
}

/// True for errors caused by the caller's inputs rather than by the numerics.
constexpr bool is_precondition(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter:
    case ErrorCode::UnboundedVariationViolated:
    case ErrorCode::DomainError:
    case ErrorCode::NoPositiveRoot:
    case ErrorCode::ConditionHViolated:
    case ErrorCode::LaplaceParameterTooSmall:
    case ErrorCode::InvalidConfig:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace expfun
