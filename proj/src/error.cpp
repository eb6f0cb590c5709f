#include "pcalda/error.hpp"

namespace pcalda {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotSymmetric: return "not-symmetric";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::NotPositiveDefinite: return "not-positive-definite";
    case ErrorCode::DegenerateData: return "degenerate-data";
    case ErrorCode::FileNotFound: return "file-not-found";
    case ErrorCode::Io: return "io";
    case ErrorCode::BadMagic: return "bad-magic";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::Truncated: return "truncated";
    case ErrorCode::UnsupportedMaxval: return "unsupported-maxval";
    case ErrorCode::TooFewClasses: return "too-few-classes";
    case ErrorCode::TooFewImages: return "too-few-images";
    case ErrorCode::HeterogeneousDimensions: return "heterogeneous-dimensions";
    case ErrorCode::UnsupportedVersion: return "unsupported-version";
    case ErrorCode::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace pcalda
