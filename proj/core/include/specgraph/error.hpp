#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specgraph {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  OutOfRangeProbability,
  MalformedMembership,
  OddN,
  NotSymmetric,
  NotOrthonormal,
  KOutOfRange,
  ShapeMismatch,
  BadLevel,
  NonpositiveGap,
  NoGapCertificate,
  DuplicateCenters,
  TooManyLabelsForExact,
  NonpositiveMargin,
  OutsideDomain,
  DegenerateTopEigenvalue,
  EmptyGroup,
  InsufficientTolerance,
  UnsupportedSpec,
  NoTiePresent,
  TooSmall,
  NumericalFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is stable and machine
/// readable; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// True for failures caused by the caller's input (CLI exit code 1);
  /// false for internal numerical failures (exit code 2).
  bool is_input_error() const noexcept { return code_ != ErrorCode::NumericalFailure; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace specgraph
