#include "pcalda/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace pcalda {

namespace {

class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  std::size_t next_number(const char* what) {
    skip_whitespace_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      if (value > std::numeric_limits<std::size_t>::max() / 10)
        throw Error(ErrorCode::Malformed, fmt::format("{}: {} out of range", path_.string(), what));
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    if (digits == 0)
      throw Error(ErrorCode::Malformed, fmt::format("{}: expected {} in PGM header", path_.string(), what));
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw Error(ErrorCode::Malformed,
                  fmt::format("{}: missing whitespace after PGM header", path_.string()));
    return pos_ + 1;
  }

 private:
  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 2;
};

}  // namespace

ImageVector load_pgm(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(ErrorCode::FileNotFound, fmt::format("{}: no such file", path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("{}: cannot open for reading", path.string()));
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw Error(ErrorCode::BadMagic, fmt::format("{}: not a binary PGM (expected magic P5)", path.string()));

  HeaderReader header(bytes, path);
  const std::size_t width = header.next_number("width");
  const std::size_t height = header.next_number("height");
  const std::size_t maxval = header.next_number("maxval");
  if (width == 0 || height == 0)
    throw Error(ErrorCode::Malformed, fmt::format("{}: image has zero size", path.string()));
  if (maxval == 0)
    throw Error(ErrorCode::Malformed, fmt::format("{}: maxval must be positive", path.string()));
  if (maxval > 255)
    throw Error(ErrorCode::UnsupportedMaxval,
                fmt::format("{}: maxval {} exceeds 255; only 8-bit PGM is supported", path.string(), maxval));

  const std::size_t offset = header.raster_offset();
  const std::size_t expected = width * height;
  const std::size_t available = bytes.size() - std::min(offset, bytes.size());
  if (available < expected)
    throw Error(ErrorCode::Truncated,
                fmt::format("{}: raster truncated, expected {} bytes, found {}", path.string(), expected,
                            available));

  ImageVector image;
  image.width = width;
  image.height = height;
  image.source_path = path.string();
  image.pixels.resize(expected);
  const double scale = static_cast<double>(maxval);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) {
      const unsigned char v = bytes[offset + r * width + c];
      if (v > maxval)
        throw Error(ErrorCode::Malformed,
                    fmt::format("{}: pixel value {} exceeds maxval {}", path.string(), v, maxval));
      image.at(r, c) = static_cast<double>(v) / scale;
    }
  return image;
}

void write_pgm(const std::filesystem::path& path, const ImageVector& image) {
  if (image.width == 0 || image.height == 0 || image.pixels.size() != image.width * image.height)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{}: image of {}x{} has {} pixels", path.string(), image.width, image.height,
                            image.pixels.size()));

  std::string out = fmt::format("P5\n{} {}\n255\n", image.width, image.height);
  out.reserve(out.size() + image.pixels.size());
  for (std::size_t r = 0; r < image.height; ++r)
    for (std::size_t c = 0; c < image.width; ++c) {
      const double v = std::clamp(image.at(r, c), 0.0, 1.0);
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, fmt::format("{}: cannot open for writing", path.string()));
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::Io, fmt::format("{}: write failed", path.string()));
}

}  // namespace pcalda
