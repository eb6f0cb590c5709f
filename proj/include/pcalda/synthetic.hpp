#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "pcalda/gallery.hpp"

namespace pcalda {

struct SyntheticSpec {
  std::size_t classes = 5;
  std::size_t per_class = 4;
  std::size_t width = 16;
  std::size_t height = 16;
  std::uint64_t seed = 42;
};

/// Deterministic face-like gallery: each class gets a smooth base pattern
/// (a few Gaussian blobs over a shaded background) drawn from the seed, and
/// each image adds a small brightness shift and per-pixel noise. Pixels are
/// quantized to multiples of 1/255 so a PGM round trip is exact. Classes are
/// named client_00, client_01, ...
LabeledGallery synthesize_gallery(const SyntheticSpec& spec);

/// Write `<out_dir>/<class>/img_XX.pgm`, creating directories as needed.
void write_gallery(const LabeledGallery& gallery, const std::filesystem::path& out_dir);

}  // namespace pcalda
