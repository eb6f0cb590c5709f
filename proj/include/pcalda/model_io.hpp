#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pcalda/recognizer.hpp"

namespace pcalda {

// Little-endian model file:
//
//   "FKM1"  format_version u32  width u32  height u32  d u32  f u32  p u32  C u32  k u32
//   threshold flag u8 (+ f64 when 1)
//   C × (u32 byte length + UTF-8 class name)
//   p × u32 class index
//   f64 arrays: mean[N]  pca eigenvalues[d]  pca basis[N×d, column-major]
//               fisher eigenvalues[f]  fisher basis[d×f, column-major]
//               class means[C×f, one class after another]  exemplars[f×p, column-major]

std::vector<std::uint8_t> serialize_model(const RecognizerModel& model);

/// Parses and validates. Errors: BadMagic, UnsupportedVersion, Truncated
/// (expected vs. actual length), Malformed, InvariantViolation.
RecognizerModel deserialize_model(std::span<const std::uint8_t> bytes);

void save_model(const RecognizerModel& model, const std::filesystem::path& path);
RecognizerModel load_model(const std::filesystem::path& path);

}  // namespace pcalda
