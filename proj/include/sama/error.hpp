#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sama {

enum class ErrorCode {
  UnsupportedFormat,
  CorruptFile,
  IoError,
  MixedDimensions,
  EmptyClip,
  InsufficientFrames,
  InputTooSmall,
  GridTooFine,
  CellSmallerThanFragment,
  IndivisibleDims,
  DimMismatch,
  BadArity,
  NonFiniteInput,
  MissingProvenance,
  InvalidConfig,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code identifies the failure
/// class; the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sama
