#include "ferfreq/decode.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

#include "ferfreq/error.hpp"
#include "ferfreq/pgm.hpp"

namespace ferfreq {
namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

Plane gray_from_raster(const Raster& r) {
  Plane out(r.width, r.height);
  const double inv = 1.0 / static_cast<double>(r.maxval);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    double v;
    if (r.channels == 1) {
      v = r.samples[i] * inv;
    } else {
      v = (kLumaR * r.samples[3 * i] + kLumaG * r.samples[3 * i + 1] +
           kLumaB * r.samples[3 * i + 2]) *
          inv;
    }
    out.data[i] = clamp01(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PNG

struct PngHandle {
  std::FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngHandle() {
    if (png != nullptr) png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
    if (fp != nullptr) std::fclose(fp);
  }
};

Plane decode_png(const std::string& path) {
  PngHandle h;
  h.fp = std::fopen(path.c_str(), "rb");
  if (h.fp == nullptr) throw IoError("cannot open " + path);
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (h.png == nullptr) throw Error("png reader allocation failed");
  h.info = png_create_info_struct(h.png);
  if (h.info == nullptr) throw Error("png info allocation failed");

  // libpng reports errors by longjmp back to this point.
  if (setjmp(png_jmpbuf(h.png))) throw FormatError("malformed png: " + path);

  png_init_io(h.png, h.fp);
  png_read_info(h.png, h.info);

  const png_byte color_type = png_get_color_type(h.png, h.info);
  const png_byte bit_depth = png_get_bit_depth(h.png, h.info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(h.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(h.png);
  if (bit_depth == 16) png_set_scale_16(h.png);
  if ((color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
      png_get_valid(h.png, h.info, PNG_INFO_tRNS) != 0) {
    png_set_strip_alpha(h.png);
  }
  png_read_update_info(h.png, h.info);

  const int width = static_cast<int>(png_get_image_width(h.png, h.info));
  const int height = static_cast<int>(png_get_image_height(h.png, h.info));
  const int channels = png_get_channels(h.png, h.info);
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3)) {
    throw FormatError("unsupported png layout: " + path);
  }

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * channels);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
  }
  png_read_image(h.png, rows.data());

  Raster r;
  r.width = width;
  r.height = height;
  r.channels = channels;
  r.maxval = 255;
  r.samples.assign(pixels.begin(), pixels.end());
  return gray_from_raster(r);
}

// ---------------------------------------------------------------------------
// GIF (87a/89a, first frame)

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t>& buf, const std::string& path)
      : buf_(buf), path_(path) {}

  std::uint8_t u8() {
    if (pos_ >= buf_.size()) throw FormatError("truncated gif: " + path_);
    return buf_[pos_++];
  }

  std::uint16_t u16le() {
    const std::uint32_t lo = u8();
    const std::uint32_t hi = u8();
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }

  const std::uint8_t* take(std::size_t n) {
    if (buf_.size() - pos_ < n) throw FormatError("truncated gif: " + path_);
    const std::uint8_t* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

 private:
  const std::vector<std::uint8_t>& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

using Rgb = std::array<std::uint8_t, 3>;

std::vector<Rgb> read_color_table(ByteReader& in, int entries) {
  std::vector<Rgb> table(static_cast<std::size_t>(entries));
  const std::uint8_t* p = in.take(static_cast<std::size_t>(entries) * 3);
  for (int i = 0; i < entries; ++i) {
    table[static_cast<std::size_t>(i)] = {p[3 * i], p[3 * i + 1], p[3 * i + 2]};
  }
  return table;
}

void skip_sub_blocks(ByteReader& in) {
  for (std::uint8_t len = in.u8(); len != 0; len = in.u8()) in.take(len);
}

std::vector<std::uint8_t> read_sub_blocks(ByteReader& in) {
  std::vector<std::uint8_t> data;
  for (std::uint8_t len = in.u8(); len != 0; len = in.u8()) {
    const std::uint8_t* p = in.take(len);
    data.insert(data.end(), p, p + len);
  }
  return data;
}

std::vector<std::uint8_t> lzw_decode(const std::vector<std::uint8_t>& data, int min_code_size,
                                     std::size_t expected, const std::string& path) {
  if (min_code_size < 1 || min_code_size > 8) {
    throw FormatError("malformed gif code size: " + path);
  }
  const int clear = 1 << min_code_size;
  const int end = clear + 1;
  std::array<std::int16_t, 4096> prefix{};
  std::array<std::uint8_t, 4096> suffix{};
  int next = end + 1;
  int code_size = min_code_size + 1;

  std::uint32_t bitbuf = 0;
  int bits = 0;
  std::size_t bytepos = 0;
  auto read_code = [&](int n) -> int {
    while (bits < n) {
      if (bytepos >= data.size()) return -1;
      bitbuf |= static_cast<std::uint32_t>(data[bytepos++]) << bits;
      bits += 8;
    }
    const int code = static_cast<int>(bitbuf & ((1u << n) - 1));
    bitbuf >>= n;
    bits -= n;
    return code;
  };

  std::vector<std::uint8_t> out;
  out.reserve(expected);
  std::vector<std::uint8_t> seq;
  // Walks the prefix chain; entries <= end are roots.
  auto expand = [&](int code) {
    seq.clear();
    int c = code;
    while (c > end) {
      seq.push_back(suffix[static_cast<std::size_t>(c)]);
      c = prefix[static_cast<std::size_t>(c)];
    }
    seq.push_back(static_cast<std::uint8_t>(c));
    std::reverse(seq.begin(), seq.end());
  };

  int prev = -1;
  while (out.size() < expected) {
    const int code = read_code(code_size);
    if (code < 0) break;
    if (code == clear) {
      next = end + 1;
      code_size = min_code_size + 1;
      prev = -1;
      continue;
    }
    if (code == end) break;
    if (prev < 0) {
      if (code >= clear) throw FormatError("malformed gif data: " + path);
      out.push_back(static_cast<std::uint8_t>(code));
      prev = code;
      continue;
    }
    if (code < next) {
      expand(code);
    } else if (code == next) {
      expand(prev);
      seq.push_back(seq[0]);
    } else {
      throw FormatError("malformed gif data: " + path);
    }
    if (next < 4096) {
      prefix[static_cast<std::size_t>(next)] = static_cast<std::int16_t>(prev);
      suffix[static_cast<std::size_t>(next)] = seq[0];
      ++next;
    }
    out.insert(out.end(), seq.begin(), seq.end());
    prev = code;
    if (next == (1 << code_size) && code_size < 12) ++code_size;
  }
  if (out.size() < expected) throw FormatError("truncated gif data: " + path);
  out.resize(expected);
  return out;
}

Plane decode_gif(const std::vector<std::uint8_t>& bytes, const std::string& path) {
  ByteReader in(bytes, path);
  const std::uint8_t* sig = in.take(6);
  if (!std::equal(sig, sig + 4, "GIF8") || (sig[4] != '7' && sig[4] != '9') || sig[5] != 'a') {
    throw FormatError("malformed gif signature: " + path);
  }
  const int screen_w = in.u16le();
  const int screen_h = in.u16le();
  const std::uint8_t packed = in.u8();
  const std::uint8_t background = in.u8();
  in.u8();  // pixel aspect ratio
  if (screen_w <= 0 || screen_h <= 0) throw FormatError("empty gif screen: " + path);

  std::vector<Rgb> global_table;
  if ((packed & 0x80) != 0) global_table = read_color_table(in, 2 << (packed & 0x07));

  auto luma = [](const Rgb& c) {
    return clamp01((kLumaR * c[0] + kLumaG * c[1] + kLumaB * c[2]) / 255.0);
  };

  double bg = 0.0;
  if (background < global_table.size()) bg = luma(global_table[background]);
  Plane out(screen_w, screen_h, bg);

  for (;;) {
    const std::uint8_t block = in.u8();
    if (block == 0x3B) break;  // trailer before any image
    if (block == 0x21) {
      in.u8();  // extension label
      skip_sub_blocks(in);
      continue;
    }
    if (block != 0x2C) throw FormatError("malformed gif block: " + path);

    const int left = in.u16le();
    const int top = in.u16le();
    const int w = in.u16le();
    const int h = in.u16le();
    const std::uint8_t ipacked = in.u8();
    if (w <= 0 || h <= 0 || left + w > screen_w || top + h > screen_h) {
      throw FormatError("malformed gif frame: " + path);
    }

    std::vector<Rgb> local_table;
    if ((ipacked & 0x80) != 0) local_table = read_color_table(in, 2 << (ipacked & 0x07));
    const std::vector<Rgb>& table = local_table.empty() ? global_table : local_table;
    if (table.empty()) throw FormatError("gif without color table: " + path);

    const int min_code_size = in.u8();
    const std::vector<std::uint8_t> data = read_sub_blocks(in);
    std::vector<std::uint8_t> idx =
        lzw_decode(data, min_code_size, static_cast<std::size_t>(w) * h, path);

    if ((ipacked & 0x40) != 0) {  // interlaced: four-pass row order
      static constexpr int kStart[4] = {0, 4, 2, 1};
      static constexpr int kStep[4] = {8, 8, 4, 2};
      std::vector<std::uint8_t> seq(idx.size());
      std::size_t src = 0;
      for (int pass = 0; pass < 4; ++pass) {
        for (int y = kStart[pass]; y < h; y += kStep[pass]) {
          std::copy_n(idx.begin() + static_cast<std::ptrdiff_t>(src) * w, w,
                      seq.begin() + static_cast<std::ptrdiff_t>(y) * w);
          ++src;
        }
      }
      idx = std::move(seq);
    }

    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::uint8_t i = idx[static_cast<std::size_t>(y) * w + x];
        if (i >= table.size()) throw FormatError("gif color index out of range: " + path);
        out.at(top + y, left + x) = luma(table[i]);
      }
    }
    return out;  // first frame only
  }
  throw FormatError("gif without image data: " + path);
}

}  // namespace

Plane decode_to_gray(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 6) throw FormatError("unrecognized image: " + path);

  if (bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '6') {
    return gray_from_raster(read_pnm(path));
  }
  if (bytes[0] == 0x89 && bytes[1] == 'P' && bytes[2] == 'N' && bytes[3] == 'G') {
    return decode_png(path);
  }
  if (bytes[0] == 'G' && bytes[1] == 'I' && bytes[2] == 'F' && bytes[3] == '8') {
    return decode_gif(bytes, path);
  }
  throw FormatError("unrecognized image: " + path);
}

}  // namespace ferfreq
