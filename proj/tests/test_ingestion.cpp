#include <doctest.h>

#include "pcalda/error.hpp"
#include "pcalda/gallery.hpp"
#include "pcalda/image.hpp"
#include "pcalda/synthetic.hpp"
#include "support.hpp"

using namespace pcalda;
using test::pgm_bytes;
using test::TempDir;
using test::write_bytes;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

void write_uniform(const std::filesystem::path& path, std::size_t w, std::size_t h, unsigned char v) {
  write_bytes(path, pgm_bytes(w, h, 255, std::vector<unsigned char>(w * h, v)));
}

}  // namespace

TEST_CASE("load_pgm: row-major raster becomes a column-major vector") {
  TempDir dir;
  write_bytes(dir / "a.pgm", pgm_bytes(2, 2, 255, {0, 255, 0, 255}));
  const ImageVector img = load_pgm(dir / "a.pgm");
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<double>{0, 0, 1, 1});
}

TEST_CASE("load_pgm: single pixel, comments, small maxval") {
  TempDir dir;
  write_bytes(dir / "one.pgm", pgm_bytes(1, 1, 255, {255}));
  CHECK(load_pgm(dir / "one.pgm").pixels == std::vector<double>{1.0});

  const std::string header = "P5\n# made by hand\n3 # width\n1\n# max\n15\n";
  write_bytes(dir / "c.pgm", header + std::string{'\x00', '\x05', '\x0f'});
  const ImageVector img = load_pgm(dir / "c.pgm");
  CHECK(img.width == 3);
  CHECK(img.pixels == std::vector<double>{0.0, 5.0 / 15.0, 1.0});
}

TEST_CASE("load_pgm: distinct errors") {
  TempDir dir;
  write_bytes(dir / "short.pgm", pgm_bytes(4, 4, 255, std::vector<unsigned char>(15, 1)));
  write_bytes(dir / "p2.pgm", "P2\n1 1\n255\n1\n");
  write_bytes(dir / "deep.pgm", pgm_bytes(1, 1, 65535, {0, 0}));
  write_bytes(dir / "header.pgm", "P5\n4\n");

  CHECK(code_of([&] { load_pgm(dir / "short.pgm"); }) == ErrorCode::Truncated);
  CHECK(message_of([&] { load_pgm(dir / "short.pgm"); }).find("expected 16 bytes, found 15") != std::string::npos);
  CHECK(code_of([&] { load_pgm(dir / "p2.pgm"); }) == ErrorCode::BadMagic);
  CHECK(code_of([&] { load_pgm(dir / "deep.pgm"); }) == ErrorCode::UnsupportedMaxval);
  CHECK(code_of([&] { load_pgm(dir / "missing.pgm"); }) == ErrorCode::FileNotFound);
  CHECK(code_of([&] { load_pgm(dir / "header.pgm"); }) == ErrorCode::Malformed);
}

TEST_CASE("write_pgm/load_pgm round-trip is exact for k/255 values") {
  TempDir dir;
  test::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    ImageVector img;
    img.width = rng.index(1, 9);
    img.height = rng.index(1, 9);
    for (std::size_t i = 0; i < img.width * img.height; ++i)
      img.pixels.push_back(static_cast<double>(rng.index(0, 255)) / 255.0);
    write_pgm(dir / "rt.pgm", img);
    const ImageVector back = load_pgm(dir / "rt.pgm");
    CHECK(back.pixels == img.pixels);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
  }
}

TEST_CASE("load_gallery: sorted classes and files") {
  TempDir dir;
  write_uniform(dir / "b/2.pgm", 4, 4, 40);
  write_uniform(dir / "b/1.pgm", 4, 4, 30);
  write_uniform(dir / "a/2.pgm", 4, 4, 20);
  write_uniform(dir / "a/1.pgm", 4, 4, 10);
  write_bytes(dir / "a/notes.txt", "ignored");

  const LabeledGallery g = load_gallery(dir.path());
  CHECK(g.size() == 4);
  CHECK(g.class_names == std::vector<std::string>{"a", "b"});
  CHECK(g.labels == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(g.class_sizes() == std::vector<std::size_t>{2, 2});
  CHECK(g.images[0].pixels[0] == 10.0 / 255.0);
  CHECK(g.images[3].pixels[0] == 40.0 / 255.0);

  const LabeledGallery again = load_gallery(dir.path());
  CHECK(again.labels == g.labels);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(again.images[i] == g.images[i]);
}

TEST_CASE("load_gallery: precondition failures") {
  TempDir one;
  write_uniform(one / "a/1.pgm", 4, 4, 1);
  write_uniform(one / "a/2.pgm", 4, 4, 2);
  CHECK(code_of([&] { load_gallery(one.path()); }) == ErrorCode::TooFewClasses);
  CHECK(message_of([&] { load_gallery(one.path()); }).find("at least 2 classes required") != std::string::npos);

  TempDir mixed;
  write_uniform(mixed / "a/1.pgm", 4, 4, 1);
  write_uniform(mixed / "a/2.pgm", 4, 4, 2);
  write_uniform(mixed / "b/1.pgm", 8, 8, 3);
  write_uniform(mixed / "b/2.pgm", 4, 4, 4);
  CHECK(code_of([&] { load_gallery(mixed.path()); }) == ErrorCode::HeterogeneousDimensions);
  CHECK(message_of([&] { load_gallery(mixed.path()); }).find("b/1.pgm") != std::string::npos);

  TempDir lonely;
  write_uniform(lonely / "a/1.pgm", 4, 4, 1);
  write_uniform(lonely / "a/2.pgm", 4, 4, 2);
  write_uniform(lonely / "b/1.pgm", 4, 4, 3);
  CHECK(code_of([&] { load_gallery(lonely.path()); }) == ErrorCode::TooFewImages);
  CHECK(message_of([&] { load_gallery(lonely.path()); }).find("'b'") != std::string::npos);

  CHECK(code_of([&] { load_gallery(one / "nowhere"); }) == ErrorCode::FileNotFound);
}

TEST_CASE("load_probe_set accepts a single class") {
  TempDir dir;
  write_uniform(dir / "x/1.pgm", 2, 2, 9);
  const LabeledGallery g = load_probe_set(dir.path());
  CHECK(g.size() == 1);
  CHECK(g.class_names == std::vector<std::string>{"x"});
}

TEST_CASE("data_matrix: columns are the image vectors") {
  LabeledGallery g;
  g.width = 1;
  g.height = 2;
  g.images = {{{1, 2}, 1, 2, "x"}, {{3, 4}, 1, 2, "y"}};
  g.labels = {0, 0};
  g.class_names = {"a"};
  CHECK(data_matrix(g) == Matrix::from_rows({{1, 3}, {2, 4}}));

  const LabeledGallery synth = synthesize_gallery({3, 3, 5, 4, 7});
  const Matrix x = data_matrix(synth);
  CHECK(x.rows() == 20);
  CHECK(x.cols() == 9);
  for (std::size_t i = 0; i < synth.size(); ++i)
    CHECK(std::equal(x.col(i).begin(), x.col(i).end(), synth.images[i].pixels.begin()));
}

TEST_CASE("synthetic gallery: deterministic, valid, and byte-identical on disk") {
  const LabeledGallery a = synthesize_gallery({});
  const LabeledGallery b = synthesize_gallery({});
  CHECK(a.size() == 20);
  CHECK(a.class_count() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.images[i] == b.images[i]);
  CHECK_NOTHROW(validate_gallery(a));

  TempDir x, y;
  write_gallery(a, x.path());
  write_gallery(b, y.path());
  const LabeledGallery reloaded = load_gallery(x.path());
  CHECK(reloaded.class_names == a.class_names);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(reloaded.images[i].pixels == a.images[i].pixels);
    CHECK(test::read_bytes(x.path() / a.images[i].source_path) ==
          test::read_bytes(y.path() / b.images[i].source_path));
  }

  const LabeledGallery other = synthesize_gallery({5, 4, 16, 16, 43});
  CHECK(other.images[0].pixels != a.images[0].pixels);
}
