#pragma once

#include <stdexcept>
#include <string>

namespace itdsim {

enum class ErrorCode {
  NonHermitian,
  ShiftTooLarge,
  SupportOverflow,
  DimensionMismatch,
  BadParams,
  BadGrid,
  DegenerateProbability,
  NonOrthogonalEnsemble,
  EmptyRecord,
  EmptyList,
  EmptyHistogram,
  StepTooSmall,
  InputFormat,
};

/// Error carrying a machine-readable code; the CLI maps codes to exit codes.
class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// 2 = bad parameters, 3 = input-format error, 4 = numerical guard tripped.
  int exit_code() const noexcept {
    switch (code_) {
      case ErrorCode::BadParams:
      case ErrorCode::BadGrid:
      case ErrorCode::EmptyRecord:
      case ErrorCode::EmptyList:
      case ErrorCode::EmptyHistogram:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::ShiftTooLarge:
        return 2;
      case ErrorCode::InputFormat:
        return 3;
      default:
        return 4;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace itdsim
