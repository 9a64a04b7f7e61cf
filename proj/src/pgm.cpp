#include "ferfreq/pgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ferfreq/error.hpp"

namespace ferfreq {

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
int next_header_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) {
    throw FormatError(path + ": malformed PNM header");
  }
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 0x7FFFFF) throw FormatError(path + ": PNM header value too large");
    c = in.get();
  }
  return value;
}

}  // namespace

Raster read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");

  char p = 0, digit = 0;
  in.get(p);
  in.get(digit);
  if (p != 'P' || (digit != '2' && digit != '3' && digit != '5' && digit != '6')) {
    throw FormatError(path + ": not a supported PNM type");
  }
  const bool binary = digit == '5' || digit == '6';
  const int channels = (digit == '3' || digit == '6') ? 3 : 1;

  Raster r;
  r.channels = channels;
  r.width = next_header_int(in, path);
  r.height = next_header_int(in, path);
  r.maxval = next_header_int(in, path);
  if (r.width <= 0 || r.height <= 0 || r.maxval <= 0 || r.maxval > 65535) {
    throw FormatError(path + ": invalid PNM dimensions or maxval");
  }

  const std::size_t n =
      static_cast<std::size_t>(r.width) * r.height * channels;
  r.samples.resize(n);

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    const int bytes_per_sample = r.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(n * bytes_per_sample);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
      throw FormatError(path + ": truncated PNM payload");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (bytes_per_sample == 2) {
        r.samples[i] = static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
      } else {
        r.samples[i] = buf[i];
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      long v = 0;
      if (!(in >> v)) throw FormatError(path + ": truncated ASCII PNM");
      if (v < 0 || v > r.maxval) throw FormatError(path + ": PNM sample out of range");
      r.samples[i] = static_cast<std::uint16_t>(v);
    }
  }
  return r;
}

void write_pgm(const Plane& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot write");
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(img.width));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = img.at(y, x);
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      row[static_cast<std::size_t>(x)] =
          static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), img.width);
  }
  if (!out) throw IoError(path + ": write failed");
}

void write_pgm_minmax(const Plane& img, const std::string& path) {
  double lo = img.data.empty() ? 0.0 : img.data[0];
  double hi = lo;
  for (double v : img.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Plane scaled(img.width, img.height);
  if (hi > lo) {
    for (std::size_t i = 0; i < img.data.size(); ++i) {
      scaled.data[i] = (img.data[i] - lo) / (hi - lo);
    }
  }
  write_pgm(scaled, path);
}

}  // namespace ferfreq
