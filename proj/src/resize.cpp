#include "ferfreq/resize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

struct Taps {
  int i[4];
  double w[4];
};

// Catmull-Rom weights for the four taps around a sample with fraction t in
// [0,1). At t==0 the weights are exactly (0,1,0,0).
void catmull_rom_weights(double t, double w[4]) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = 0.5 * (-t + 2.0 * t2 - t3);
  w[1] = 0.5 * (2.0 - 5.0 * t2 + 3.0 * t3);
  w[2] = 0.5 * (t + 4.0 * t2 - 3.0 * t3);
  w[3] = 0.5 * (-t2 + t3);
}

std::vector<Taps> make_taps(int src_n, int dst_n) {
  std::vector<Taps> taps(static_cast<std::size_t>(dst_n));
  const double scale = static_cast<double>(src_n) / dst_n;
  for (int d = 0; d < dst_n; ++d) {
    const double pos = (d + 0.5) * scale - 0.5;
    const double base = std::floor(pos);
    const double t = pos - base;
    Taps& tp = taps[static_cast<std::size_t>(d)];
    for (int k = 0; k < 4; ++k) {
      tp.i[k] = std::clamp(static_cast<int>(base) - 1 + k, 0, src_n - 1);
    }
    catmull_rom_weights(t, tp.w);
  }
  return taps;
}

}  // namespace

Plane resize_bicubic(const Plane& src, int width, int height) {
  if (src.empty()) throw ParameterError("resize of empty image");
  if (width < 4 || height < 4) throw ParameterError("resize target must be at least 4x4");

  const std::vector<Taps> col_taps = make_taps(src.width, width);
  const std::vector<Taps> row_taps = make_taps(src.height, height);

  // Horizontal pass; intermediate values stay unclamped so the vertical
  // pass sees the true interpolant.
  Plane tmp(width, src.height);
  for (int y = 0; y < src.height; ++y) {
    const double* row = src.data.data() + static_cast<std::size_t>(y) * src.width;
    for (int x = 0; x < width; ++x) {
      const Taps& tp = col_taps[static_cast<std::size_t>(x)];
      tmp.at(y, x) = tp.w[0] * row[tp.i[0]] + tp.w[1] * row[tp.i[1]] +
                     tp.w[2] * row[tp.i[2]] + tp.w[3] * row[tp.i[3]];
    }
  }

  Plane out(width, height);
  for (int y = 0; y < height; ++y) {
    const Taps& tp = row_taps[static_cast<std::size_t>(y)];
    const double* r0 = tmp.data.data() + static_cast<std::size_t>(tp.i[0]) * width;
    const double* r1 = tmp.data.data() + static_cast<std::size_t>(tp.i[1]) * width;
    const double* r2 = tmp.data.data() + static_cast<std::size_t>(tp.i[2]) * width;
    const double* r3 = tmp.data.data() + static_cast<std::size_t>(tp.i[3]) * width;
    for (int x = 0; x < width; ++x) {
      const double v = tp.w[0] * r0[x] + tp.w[1] * r1[x] + tp.w[2] * r2[x] + tp.w[3] * r3[x];
      out.at(y, x) = std::min(1.0, std::max(0.0, v));
    }
  }
  return out;
}

}  // namespace ferfreq
