#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcalda {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSymmetric,
  NoConvergence,
  NotPositiveDefinite,
  DegenerateData,
  FileNotFound,
  Io,
  BadMagic,
  Malformed,
  Truncated,
  UnsupportedMaxval,
  TooFewClasses,
  TooFewImages,
  HeterogeneousDimensions,
  UnsupportedVersion,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as an Error carrying a code that
/// callers can branch on; what() holds a one-line human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcalda
