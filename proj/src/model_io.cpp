#include "pcalda/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace pcalda {

namespace {

constexpr char kMagic[4] = {'F', 'K', 'M', '1'};

class ByteWriter {
 public:
  void raw(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::size_t value) {
    if (value > std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorCode::InvalidArgument, fmt::format("{} does not fit in u32", value));
    for (int shift = 0; shift < 32; shift += 8) bytes_.push_back(static_cast<std::uint8_t>(value >> shift));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int shift = 0; shift < 64; shift += 8) bytes_.push_back(static_cast<std::uint8_t>(bits >> shift));
  }
  void f64s(std::span<const double> values) {
    for (double v : values) f64(v);
  }
  void text(const std::string& s) {
    u32(s.size());
    raw(s.data(), s.size());
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n)
      throw Error(ErrorCode::Truncated,
                  fmt::format("model file truncated: expected at least {} bytes, file has {}",
                              pos_ + n, bytes_.size()));
  }
  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  std::vector<double> f64s(std::size_t n) {
    need(n * 8);
    std::vector<double> out(n);
    for (double& v : out) v = f64();
    return out;
  }
  std::string text() {
    const std::uint32_t len = u32();
    need(len);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }
  std::size_t position() const noexcept { return pos_; }
  std::size_t size() const noexcept { return bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

Matrix matrix_from(std::size_t rows, std::size_t cols, std::vector<double> data) {
  try {
    return Matrix(rows, cols, std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantViolation, fmt::format("model: {}", e.what()));
  }
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const RecognizerModel& model) {
  validate_model(model);
  ByteWriter w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(model.format_version);
  w.u32(model.width);
  w.u32(model.height);
  w.u32(model.pca.dim());
  w.u32(model.fisher.dim());
  w.u32(model.exemplar_count());
  w.u32(model.class_count());
  w.u32(model.k);
  w.u8(model.threshold ? 1 : 0);
  if (model.threshold) w.f64(*model.threshold);
  for (const auto& name : model.class_names()) w.text(name);
  for (std::size_t label : model.labels) w.u32(label);
  w.f64s(model.pca.mean);
  w.f64s(model.pca.eigenvalues);
  w.f64s(model.pca.basis.data());
  w.f64s(model.fisher.eigenvalues);
  w.f64s(model.fisher.basis.data());
  w.f64s(model.fisher.class_means.data());
  w.f64s(model.exemplars.data());
  return w.take();
}

RecognizerModel deserialize_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
    throw Error(ErrorCode::BadMagic, "not a model file (expected magic FKM1)");
  ByteReader r(bytes.subspan(sizeof kMagic));

  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion)
    throw Error(ErrorCode::UnsupportedVersion,
                fmt::format("unsupported model format version {} (this build reads {})", version,
                            kModelFormatVersion));
  const std::size_t width = r.u32();
  const std::size_t height = r.u32();
  const std::size_t d = r.u32();
  const std::size_t f = r.u32();
  const std::size_t p = r.u32();
  const std::size_t c = r.u32();
  const std::size_t k = r.u32();
  if (width == 0 || height == 0 || d == 0 || f == 0 || p == 0 || c == 0)
    throw Error(ErrorCode::InvariantViolation, "model: zero dimension in header");

  std::optional<double> threshold;
  switch (r.u8()) {
    case 0: break;
    case 1: threshold = r.f64(); break;
    default: throw Error(ErrorCode::Malformed, "model: threshold flag must be 0 or 1");
  }

  std::vector<std::string> names;
  names.reserve(std::min<std::size_t>(c, r.size()));
  for (std::size_t i = 0; i < c; ++i) names.push_back(r.text());

  // Everything after the names has a size fixed by the header.
  const std::size_t n = width * height;
  const long double reals = static_cast<long double>(n) * (1 + d) + d + f + static_cast<long double>(d) * f +
                            static_cast<long double>(c) * f + static_cast<long double>(f) * p;
  const long double expected = static_cast<long double>(sizeof kMagic + r.position()) + 4.0L * p + 8.0L * reals;
  const std::size_t actual = bytes.size();
  if (expected != static_cast<long double>(actual)) {
    const auto code = expected > static_cast<long double>(actual) ? ErrorCode::Truncated : ErrorCode::Malformed;
    throw Error(code, fmt::format("model file length mismatch: expected {:.0f} bytes, file has {}",
                                  static_cast<double>(expected), actual));
  }

  std::vector<std::size_t> labels(p);
  for (auto& label : labels) label = r.u32();

  RecognizerModel model{
      PcaModel{r.f64s(n), Matrix(1, 1), {}},
      FisherModel{Matrix(1, 1), {}, Matrix(1, 1), std::move(names)},
      Matrix(1, 1),
      std::move(labels),
      k,
      threshold,
      width,
      height,
      version,
  };
  model.pca.eigenvalues = r.f64s(d);
  model.pca.basis = matrix_from(n, d, r.f64s(n * d));
  model.fisher.eigenvalues = r.f64s(f);
  model.fisher.basis = matrix_from(d, f, r.f64s(d * f));
  model.fisher.class_means = matrix_from(f, c, r.f64s(c * f));
  model.exemplars = matrix_from(f, p, r.f64s(f * p));

  validate_model(model);
  return model;
}

void save_model(const RecognizerModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, fmt::format("{}: cannot open for writing", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::Io, fmt::format("{}: write failed", path.string()));
}

RecognizerModel load_model(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(ErrorCode::FileNotFound, fmt::format("{}: no such file", path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("{}: cannot open for reading", path.string()));
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return deserialize_model(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace pcalda
