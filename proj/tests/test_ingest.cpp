#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "ferfreq/decode.hpp"
#include "ferfreq/error.hpp"
#include "ferfreq/manifest.hpp"
#include "ferfreq/pgm.hpp"
#include "ferfreq/resize.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace ferfreq;

namespace {

// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("ferfreq_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const unsigned char* data, unsigned long len) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
}

void write_string(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

double luma(int r, int g, int b) { return (0.299 * r + 0.587 * g + 0.114 * b) / 255.0; }

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("raw PGM values scale linearly to [0,1]") {
  TempDir dir("pgm");
  const std::string path = dir.file("a.pgm");
  write_string(path, std::string("P5\n2 2\n255\n") + '\x00' + '\x80' + '\xff' + '\x40');
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 2);
  REQUIRE(p.height == 2);
  CHECK(p.data[0] == 0.0);
  CHECK(std::fabs(p.data[1] - 128.0 / 255.0) < 1e-12);
  CHECK(p.data[2] == 1.0);
  CHECK(std::fabs(p.data[3] - 64.0 / 255.0) < 1e-12);
}

TEST_CASE("ASCII PGM with comments parses and matches its binary twin") {
  TempDir dir("pgm_ascii");
  const std::string path = dir.file("a.pgm");
  write_string(path, "P2\n# comment line\n3 1\n100\n0 50 100\n");
  const Plane p = decode_to_gray(path);
  CHECK(p.data[0] == 0.0);
  CHECK(std::fabs(p.data[1] - 0.5) < 1e-12);
  CHECK(p.data[2] == 1.0);
}

TEST_CASE("16-bit PGM divides by its maxval") {
  TempDir dir("pgm16");
  const std::string path = dir.file("a.pgm");
  std::string payload = "P5\n2 1\n65535\n";
  payload += '\x00';
  payload += '\x00';
  payload += '\xff';
  payload += '\xff';
  write_string(path, payload);
  const Plane p = decode_to_gray(path);
  CHECK(p.data[0] == 0.0);
  CHECK(p.data[1] == 1.0);
}

TEST_CASE("color PPM converts by BT.601 luminance") {
  TempDir dir("ppm");
  const std::string path = dir.file("a.ppm");
  write_string(path, "P3\n2 1\n255\n255 0 0 255 255 255\n");
  const Plane p = decode_to_gray(path);
  CHECK(std::fabs(p.data[0] - luma(255, 0, 0)) < 1e-12);
  CHECK(std::fabs(p.data[1] - 1.0) < 1e-9);
}

TEST_CASE("8-bit grayscale PNG decodes to its raw values") {
  TempDir dir("png8");
  const std::string path = dir.file("a.png");
  write_bytes(path, fixtures::kGray8Png, fixtures::kGray8Png_len);
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 4);
  REQUIRE(p.height == 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      CHECK(std::fabs(p.at(y, x) - 16.0 * (4 * y + x) / 255.0) < 1e-12);
    }
  }
}

TEST_CASE("RGB PNG converts by BT.601 luminance") {
  TempDir dir("pngrgb");
  const std::string path = dir.file("a.png");
  write_bytes(path, fixtures::kRgb8Png, fixtures::kRgb8Png_len);
  const Plane p = decode_to_gray(path);
  CHECK(std::fabs(p.data[0] - luma(255, 0, 0)) < 1e-12);
  CHECK(std::fabs(p.data[1] - luma(0, 255, 0)) < 1e-12);
  CHECK(std::fabs(p.data[2] - luma(0, 0, 255)) < 1e-12);
  CHECK(std::fabs(p.data[3] - 1.0) < 1e-9);
}

TEST_CASE("16-bit grayscale PNG scales to [0,1]") {
  TempDir dir("png16");
  const std::string path = dir.file("a.png");
  write_bytes(path, fixtures::kGray16Png, fixtures::kGray16Png_len);
  const Plane p = decode_to_gray(path);
  CHECK(p.data[0] == 0.0);
  CHECK(p.data[1] == 1.0);
}

TEST_CASE("palette PNG expands through its color table") {
  TempDir dir("pngpal");
  const std::string path = dir.file("a.png");
  write_bytes(path, fixtures::kPalettePng, fixtures::kPalettePng_len);
  const Plane p = decode_to_gray(path);
  CHECK(p.data[0] == 0.0);
  CHECK(std::fabs(p.data[1] - 1.0) < 1e-9);
  CHECK(std::fabs(p.data[2] - luma(255, 0, 0)) < 1e-12);
  CHECK(std::fabs(p.data[3] - luma(0, 255, 0)) < 1e-12);
}

TEST_CASE("GIF with a local color table and extension block decodes") {
  TempDir dir("gif");
  const std::string path = dir.file("a.gif");
  write_bytes(path, fixtures::kPlainGif, fixtures::kPlainGif_len);
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 4);
  REQUIRE(p.height == 4);
  for (int y = 0; y < 4; ++y) {
    CHECK(p.at(y, 0) == 0.0);
    CHECK(std::fabs(p.at(y, 1) - 1.0) < 1e-9);
    CHECK(std::fabs(p.at(y, 2) - luma(255, 0, 0)) < 1e-12);
    CHECK(std::fabs(p.at(y, 3) - luma(0, 255, 0)) < 1e-12);
  }
}

TEST_CASE("interlaced GIF rows land in their deinterlaced positions") {
  TempDir dir("gif_i");
  const std::string path = dir.file("a.gif");
  write_bytes(path, fixtures::kInterlacedGif, fixtures::kInterlacedGif_len);
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 8);
  REQUIRE(p.height == 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      CHECK(std::fabs(p.at(y, x) - luma(36 * y, 36 * y, 36 * y)) < 1e-12);
    }
  }
}

TEST_CASE("GIF sub-rectangle composes onto the background color") {
  TempDir dir("gif_r");
  const std::string path = dir.file("a.gif");
  write_bytes(path, fixtures::kRectGif, fixtures::kRectGif_len);
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 6);
  REQUIRE(p.height == 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) {
      const bool inside = x >= 2 && x < 5 && y >= 1 && y < 5;
      if (inside) {
        CHECK(p.at(y, x) == 0.0);
      } else {
        CHECK(std::fabs(p.at(y, x) - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("GIF with a growing LZW code table decodes") {
  TempDir dir("gif_c");
  const std::string path = dir.file("a.gif");
  write_bytes(path, fixtures::kCompressedGif, fixtures::kCompressedGif_len);
  const Plane p = decode_to_gray(path);
  REQUIRE(p.width == 16);
  REQUIRE(p.height == 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const int v = ((x / 2 + y / 2) % 4) * 85;
      CHECK(std::fabs(p.at(y, x) - luma(v, v, v)) < 1e-12);
    }
  }
}

TEST_CASE("truncated and unrecognized files raise format errors") {
  TempDir dir("bad");
  const std::string cut = dir.file("cut.png");
  write_bytes(cut, fixtures::kGray8Png, fixtures::kGray8Png_len / 2);
  CHECK_THROWS_AS(decode_to_gray(cut), FormatError);

  const std::string junk = dir.file("junk.bin");
  write_string(junk, "this is not an image");
  CHECK_THROWS_AS(decode_to_gray(junk), FormatError);

  const std::string tiny = dir.file("tiny.bin");
  write_string(tiny, "GIF");
  CHECK_THROWS_AS(decode_to_gray(tiny), FormatError);

  const std::string cut_gif = dir.file("cut.gif");
  write_bytes(cut_gif, fixtures::kCompressedGif, fixtures::kCompressedGif_len / 2);
  CHECK_THROWS_AS(decode_to_gray(cut_gif), FormatError);

  CHECK_THROWS_AS(decode_to_gray(dir.file("missing.pgm")), IoError);
}

TEST_CASE("resize to identical dimensions is bit-exact") {
  const Plane img = oracles::random_plane(128, 128, 55);
  const Plane out = resize_bicubic(img, 128, 128);
  REQUIRE(out.data.size() == img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(out.data[i] == img.data[i]);
}

TEST_CASE("resize preserves constant images") {
  Plane img(37, 29, 0.5);
  const Plane out = resize_bicubic(img, 16, 16);
  REQUIRE(out.width == 16);
  REQUIRE(out.height == 16);
  for (double v : out.data) CHECK(std::fabs(v - 0.5) < 1e-12);
}

TEST_CASE("downscale matches the direct non-separable resampler") {
  const Plane img = oracles::random_plane(320, 243, 99);
  const Plane fast = resize_bicubic(img, 128, 128);
  const Plane slow = oracles::bicubic_reference(img, 128, 128);
  CHECK(oracles::max_abs_diff(fast.data, slow.data) < 1e-9);
  for (double v : fast.data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("upscale matches the direct non-separable resampler") {
  const Plane img = oracles::random_plane(17, 11, 98);
  const Plane fast = resize_bicubic(img, 64, 48);
  const Plane slow = oracles::bicubic_reference(img, 64, 48);
  CHECK(oracles::max_abs_diff(fast.data, slow.data) < 1e-9);
}

TEST_CASE("resize rejects targets smaller than the bicubic support") {
  const Plane img = oracles::random_plane(16, 16, 1);
  CHECK_THROWS_AS(resize_bicubic(img, 3, 16), ParameterError);
  CHECK_THROWS_AS(resize_bicubic(img, 16, 3), ParameterError);
  Plane empty;
  CHECK_THROWS_AS(resize_bicubic(empty, 16, 16), ParameterError);
}

TEST_CASE("corpus scan keeps the five known labels and sorts by path") {
  TempDir dir("scan");
  write_string(dir.file("subject02.sad"), "x");
  write_string(dir.file("subject01.happy"), "x");
  write_string(dir.file("subject01.glasses"), "x");
  write_string(dir.file("subject01.wink.gif"), "x");
  write_string(dir.file("notes.txt"), "x");
  const DatasetManifest m = scan_corpus(dir.path.string());
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0].subject == 1);
  CHECK(m.entries[0].label == Emotion::kHappy);
  CHECK(m.entries[1].subject == 1);
  CHECK(m.entries[1].label == Emotion::kWink);
  CHECK(m.entries[2].subject == 2);
  CHECK(m.entries[2].label == Emotion::kSad);
  for (std::size_t i = 1; i < m.entries.size(); ++i) {
    CHECK(m.entries[i - 1].path < m.entries[i].path);
  }
}

TEST_CASE("corpus scan is deterministic across runs") {
  TempDir dir("scan2");
  write_string(dir.file("subject03.sleepy"), "x");
  write_string(dir.file("subject01.surprised"), "x");
  const DatasetManifest a = scan_corpus(dir.path.string());
  const DatasetManifest b = scan_corpus(dir.path.string());
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].path == b.entries[i].path);
    CHECK(a.entries[i].subject == b.entries[i].subject);
    CHECK(a.entries[i].label == b.entries[i].label);
  }
}

TEST_CASE("empty or label-free directories raise the empty-corpus error") {
  TempDir dir("scan3");
  CHECK_THROWS_AS(scan_corpus(dir.path.string()), EmptyCorpusError);
  write_string(dir.file("readme.md"), "x");
  CHECK_THROWS_AS(scan_corpus(dir.path.string()), EmptyCorpusError);
  CHECK_THROWS_AS(scan_corpus(dir.file("nonexistent")), IoError);
}

TEST_CASE("duplicate subject-label pairs are rejected") {
  TempDir dir("scan4");
  write_string(dir.file("subject01.happy"), "x");
  write_string(dir.file("subject01.happy.gif"), "x");
  CHECK_THROWS_AS(scan_corpus(dir.path.string()), FormatError);
}

TEST_CASE("manifest JSON roundtrips and tolerates extra fields") {
  DatasetManifest m;
  m.entries.push_back({"a/subject01.happy", 1, Emotion::kHappy});
  m.entries.push_back({"a/subject09.wink", 9, Emotion::kWink});
  const std::string text = manifest_to_json(m);
  const DatasetManifest back = manifest_from_json(text);
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].path == "a/subject01.happy");
  CHECK(back.entries[0].subject == 1);
  CHECK(back.entries[0].label == Emotion::kHappy);
  CHECK(back.entries[1].label == Emotion::kWink);

  const std::string wrapped =
      std::string("{\"config\":{\"ignored\":true},") + text.substr(text.find('{') + 1);
  const DatasetManifest again = manifest_from_json(wrapped);
  CHECK(again.entries.size() == 2);
}

}  // TEST_SUITE
