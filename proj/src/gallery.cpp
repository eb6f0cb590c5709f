#include "pcalda/gallery.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace fs = std::filesystem;

namespace pcalda {

namespace {

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (directories && entry.is_directory()) {
      out.push_back(entry.path());
    } else if (!directories && entry.is_regular_file() && entry.path().extension() == ".pgm") {
      out.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::Io, fmt::format("{}: {}", dir.string(), ec.message()));
  std::ranges::sort(out, [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

void check_dimensions(LabeledGallery& gallery, const ImageVector& image) {
  if (gallery.images.empty()) {
    gallery.width = image.width;
    gallery.height = image.height;
  } else if (image.width != gallery.width || image.height != gallery.height) {
    throw Error(ErrorCode::HeterogeneousDimensions,
                fmt::format("{}: image is {}x{} but the gallery is {}x{}", image.source_path,
                            image.width, image.height, gallery.width, gallery.height));
  }
}

LabeledGallery scan(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error(ErrorCode::FileNotFound, fmt::format("{}: not a directory", root.string()));

  LabeledGallery gallery;
  for (const auto& class_dir : sorted_entries(root, true)) {
    const auto files = sorted_entries(class_dir, false);
    const std::size_t label = gallery.class_names.size();
    gallery.class_names.push_back(class_dir.filename().string());
    for (const auto& file : files) {
      ImageVector image = load_pgm(file);
      check_dimensions(gallery, image);
      gallery.images.push_back(std::move(image));
      gallery.labels.push_back(label);
    }
  }
  return gallery;
}

}  // namespace

std::vector<std::size_t> LabeledGallery::class_sizes() const {
  std::vector<std::size_t> sizes(class_names.size(), 0);
  for (std::size_t label : labels)
    if (label < sizes.size()) ++sizes[label];
  return sizes;
}

void validate_gallery(const LabeledGallery& gallery) {
  if (gallery.class_names.size() < 2)
    throw Error(ErrorCode::TooFewClasses,
                fmt::format("at least 2 classes required, found {}", gallery.class_names.size()));
  if (gallery.labels.size() != gallery.images.size())
    throw Error(ErrorCode::InvariantViolation,
                fmt::format("{} labels for {} images", gallery.labels.size(), gallery.images.size()));
  for (std::size_t c = 1; c < gallery.class_names.size(); ++c)
    if (!(gallery.class_names[c - 1] < gallery.class_names[c]))
      throw Error(ErrorCode::InvariantViolation,
                  fmt::format("class names must be distinct and sorted: '{}' then '{}'",
                              gallery.class_names[c - 1], gallery.class_names[c]));
  if (gallery.width == 0 || gallery.height == 0)
    throw Error(ErrorCode::InvariantViolation, "gallery dimensions must be positive");
  for (std::size_t i = 0; i < gallery.images.size(); ++i) {
    const auto& image = gallery.images[i];
    if (gallery.labels[i] >= gallery.class_names.size())
      throw Error(ErrorCode::InvariantViolation,
                  fmt::format("image {} has label {} but only {} classes exist", i,
                              gallery.labels[i], gallery.class_names.size()));
    if (image.width != gallery.width || image.height != gallery.height ||
        image.pixels.size() != gallery.pixel_count())
      throw Error(ErrorCode::HeterogeneousDimensions,
                  fmt::format("{}: image is {}x{} but the gallery is {}x{}", image.source_path,
                              image.width, image.height, gallery.width, gallery.height));
  }
  const auto sizes = gallery.class_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] < 2)
      throw Error(ErrorCode::TooFewImages,
                  fmt::format("class '{}' has {} image(s); at least 2 per class required",
                              gallery.class_names[c], sizes[c]));
}

LabeledGallery make_gallery(std::vector<ImageVector> images, std::vector<std::size_t> labels,
                            std::vector<std::string> class_names) {
  LabeledGallery gallery;
  if (!images.empty()) {
    gallery.width = images.front().width;
    gallery.height = images.front().height;
  }
  gallery.images = std::move(images);
  gallery.labels = std::move(labels);
  gallery.class_names = std::move(class_names);
  validate_gallery(gallery);
  return gallery;
}

LabeledGallery load_gallery(const fs::path& root) {
  LabeledGallery gallery = scan(root);
  try {
    validate_gallery(gallery);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", root.string(), e.what()));
  }
  return gallery;
}

LabeledGallery load_probe_set(const fs::path& root) {
  LabeledGallery gallery = scan(root);
  if (gallery.images.empty())
    throw Error(ErrorCode::TooFewImages, fmt::format("{}: no .pgm images found", root.string()));
  return gallery;
}

Matrix data_matrix(const LabeledGallery& gallery) {
  if (gallery.images.empty()) throw Error(ErrorCode::InvalidArgument, "empty gallery");
  const std::size_t n = gallery.pixel_count();
  std::vector<double> data;
  data.reserve(n * gallery.size());
  for (const auto& image : gallery.images) {
    if (image.pixels.size() != n)
      throw Error(ErrorCode::HeterogeneousDimensions,
                  fmt::format("{}: {} pixels, expected {}", image.source_path, image.pixels.size(), n));
    data.insert(data.end(), image.pixels.begin(), image.pixels.end());
  }
  return Matrix(n, gallery.size(), std::move(data));
}

}  // namespace pcalda
