#include "pcalda/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace fs = std::filesystem;

namespace pcalda {

namespace {

constexpr std::size_t kBlobs = 4;
constexpr double kPixelNoise = 0.03;
constexpr double kBrightnessJitter = 0.02;

// Uniform [0, 1) drawn by hand from mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

double quantize(double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; }

std::vector<double> base_pattern(Rng& rng, std::size_t width, std::size_t height) {
  struct Blob {
    double row, col, spread, amplitude;
  };
  std::vector<Blob> blobs(kBlobs);
  for (auto& b : blobs) {
    b.row = rng.uniform(0.15, 0.85) * static_cast<double>(height);
    b.col = rng.uniform(0.15, 0.85) * static_cast<double>(width);
    b.spread = rng.uniform(0.12, 0.3) * static_cast<double>(std::max(width, height));
    b.amplitude = rng.uniform(-0.35, 0.35);
  }
  const double tilt_r = rng.uniform(-0.15, 0.15);
  const double tilt_c = rng.uniform(-0.15, 0.15);
  const double level = rng.uniform(0.4, 0.6);

  std::vector<double> pixels(width * height);
  for (std::size_t c = 0; c < width; ++c)
    for (std::size_t r = 0; r < height; ++r) {
      const double y = static_cast<double>(r);
      const double x = static_cast<double>(c);
      double v = level + tilt_r * (y / static_cast<double>(height) - 0.5) +
                 tilt_c * (x / static_cast<double>(width) - 0.5);
      for (const auto& b : blobs) {
        const double dy = y - b.row;
        const double dx = x - b.col;
        v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.spread * b.spread));
      }
      pixels[c * height + r] = v;
    }
  return pixels;
}

}  // namespace

LabeledGallery synthesize_gallery(const SyntheticSpec& spec) {
  if (spec.classes < 1 || spec.per_class < 1 || spec.width < 1 || spec.height < 1)
    throw Error(ErrorCode::InvalidArgument, "synthetic gallery dimensions must be positive");

  Rng rng(spec.seed);
  const int digits = std::max(2, static_cast<int>(std::to_string(spec.classes - 1).size()));
  LabeledGallery gallery;
  gallery.width = spec.width;
  gallery.height = spec.height;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    gallery.class_names.push_back(fmt::format("client_{:0{}}", c, digits));
    const std::vector<double> base = base_pattern(rng, spec.width, spec.height);
    for (std::size_t i = 0; i < spec.per_class; ++i) {
      ImageVector image;
      image.width = spec.width;
      image.height = spec.height;
      image.source_path = fmt::format("{}/img_{:02}.pgm", gallery.class_names.back(), i);
      const double shift = rng.uniform(-kBrightnessJitter, kBrightnessJitter);
      image.pixels.resize(base.size());
      for (std::size_t j = 0; j < base.size(); ++j)
        image.pixels[j] = quantize(base[j] + shift + rng.uniform(-kPixelNoise, kPixelNoise));
      gallery.images.push_back(std::move(image));
      gallery.labels.push_back(c);
    }
  }
  return gallery;
}

void write_gallery(const LabeledGallery& gallery, const fs::path& out_dir) {
  std::vector<std::size_t> index(gallery.class_count(), 0);
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    const std::size_t label = gallery.labels[i];
    const fs::path dir = out_dir / gallery.class_names[label];
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, fmt::format("{}: {}", dir.string(), ec.message()));
    write_pgm(dir / fmt::format("img_{:02}.pgm", index[label]++), gallery.images[i]);
  }
}

}  // namespace pcalda
