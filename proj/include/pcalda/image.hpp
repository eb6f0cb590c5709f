#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace pcalda {

/// A grayscale image flattened column by column: pixel (row r, column c)
/// lives at index c·height + r. Values are in [0, 1].
struct ImageVector {
  std::vector<double> pixels;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string source_path;

  double at(std::size_t row, std::size_t col) const { return pixels[col * height + row]; }
  double& at(std::size_t row, std::size_t col) { return pixels[col * height + row]; }

  bool operator==(const ImageVector&) const = default;
};

/// Read a binary (P5) PGM with maxval ≤ 255, normalizing by maxval.
///
/// '#' comments are accepted between header tokens. Errors: FileNotFound,
/// BadMagic, Malformed (header), UnsupportedMaxval, Truncated.
ImageVector load_pgm(const std::filesystem::path& path);

/// Write `image` as an 8-bit P5 PGM, quantizing round(255·v) after clamping
/// to [0, 1]. Values already of the form k/255 survive a reload exactly.
void write_pgm(const std::filesystem::path& path, const ImageVector& image);

}  // namespace pcalda
