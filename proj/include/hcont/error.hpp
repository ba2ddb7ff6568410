#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcont {

/// Broad failure classes. The CLI maps each class to its own exit code.
enum class ErrorCategory { Parse, Domain, Verification };

enum class ErrorCode {
  ParseError,
  InvalidInterval,
  IndeterminateForm,
  OutOfDomain,
  UndefinedPoint,
  UndefinedPoints,
  DomainMismatch,
  MalformedSegment,
  UndefinedOnDense,
  NotPointValued,
  NotPiecewiseContinuous,
  NotHContinuous,
  PoleInsideDense,
  BadSelection,
  EmptyFamily,
  Unbounded,
  NotStationary,
  IrrationalBreakpoint,
  DegreeCap,
  DivisionByZeroOnSegment,
  PivotNotMonotone,
  PivotBracketFailure,
  TargetUndefined,
  PatchStall,
  VerificationFailure,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::IndeterminateForm: return "IndeterminateForm";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::UndefinedPoint: return "UndefinedPoint";
    case ErrorCode::UndefinedPoints: return "UndefinedPoints";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::MalformedSegment: return "MalformedSegment";
    case ErrorCode::UndefinedOnDense: return "UndefinedOnDense";
    case ErrorCode::NotPointValued: return "NotPointValued";
    case ErrorCode::NotPiecewiseContinuous: return "NotPiecewiseContinuous";
    case ErrorCode::NotHContinuous: return "NotHContinuous";
    case ErrorCode::PoleInsideDense: return "PoleInsideDense";
    case ErrorCode::BadSelection: return "BadSelection";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotStationary: return "NotStationary";
    case ErrorCode::IrrationalBreakpoint: return "IrrationalBreakpoint";
    case ErrorCode::DegreeCap: return "DegreeCap";
    case ErrorCode::DivisionByZeroOnSegment: return "DivisionByZeroOnSegment";
    case ErrorCode::PivotNotMonotone: return "PivotNotMonotone";
    case ErrorCode::PivotBracketFailure: return "PivotBracketFailure";
    case ErrorCode::TargetUndefined: return "TargetUndefined";
    case ErrorCode::PatchStall: return "PatchStall";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

constexpr ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return ErrorCategory::Parse;
    case ErrorCode::VerificationFailure: return ErrorCategory::Verification;
    default: return ErrorCategory::Domain;
  }
}

/// Every library failure is reported through this type; `code()` names the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return error_category(code_); }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hcont
