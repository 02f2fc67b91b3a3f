#pragma once

#include <stdexcept>
#include <string>

namespace liecomm {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NotUnitary,
  NoConvergence,
  OutsideInjectivityDomain,
  AlgebraMismatch,
  IndexOutOfRange,
  NotApplicable,
  InvalidPresentation,
  UnsupportedType,
  NotInComplement,
  NotRegular,
  TargetTooLarge,
  SpectrumTooLarge,
};

const char* error_name(ErrorCode code) noexcept;

/// Library-wide exception. `stage` names the pipeline step that raised it,
/// when the error was propagated through one of the solvers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string stage = {})
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }
  const std::string& stage() const noexcept { return stage_; }

  Error with_stage(std::string stage) const {
    return Error(code_, what(), std::move(stage));
  }

 private:
  ErrorCode code_;
  std::string stage_;
};

inline const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutsideInjectivityDomain: return "OutsideInjectivityDomain";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::NotInComplement: return "NotInComplement";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::TargetTooLarge: return "TargetTooLarge";
    case ErrorCode::SpectrumTooLarge: return "SpectrumTooLarge";
  }
  return "Unknown";
}

}  // namespace liecomm
