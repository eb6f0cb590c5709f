#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "pcalda/image.hpp"
#include "pcalda/matrix.hpp"

namespace pcalda {

/// Class-labeled training images.
///
/// labels[i] indexes class_names and is parallel to images. class_names are
/// strictly increasing, so a smaller class index always means an earlier
/// class name; the kNN tie rule relies on that.
struct LabeledGallery {
  std::vector<ImageVector> images;
  std::vector<std::size_t> labels;
  std::vector<std::string> class_names;
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t size() const noexcept { return images.size(); }
  std::size_t class_count() const noexcept { return class_names.size(); }
  std::size_t pixel_count() const noexcept { return width * height; }
  std::vector<std::size_t> class_sizes() const;
};

/// Checks the gallery invariants: ≥ 2 classes, ≥ 2 images per class,
/// identical dimensions, labels in range, sorted distinct class names.
void validate_gallery(const LabeledGallery& gallery);

/// Build and validate a gallery from in-memory images.
LabeledGallery make_gallery(std::vector<ImageVector> images, std::vector<std::size_t> labels,
                            std::vector<std::string> class_names);

/// Load `<root>/<class>/<image>.pgm`: classes sorted by directory name,
/// images sorted by filename. Files without a .pgm extension are ignored.
LabeledGallery load_gallery(const std::filesystem::path& root);

/// Load every .pgm under `<root>/<class>/` without the training-set rules
/// (any number of classes and images). Used for probe sets.
LabeledGallery load_probe_set(const std::filesystem::path& root);

/// N×p matrix whose column i is images[i].pixels.
Matrix data_matrix(const LabeledGallery& gallery);

}  // namespace pcalda
