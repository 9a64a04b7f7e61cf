#include "ferfreq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

using Cplx = std::complex<double>;

// Twiddle factors exp(-2*pi*i*k/n) for k in [0, n/2); butterflies for a
// sub-transform of length `len` index the table with stride n/len, so no
// incremental rotation error accumulates.
std::vector<Cplx> make_twiddles(int n) {
  std::vector<Cplx> tw(static_cast<std::size_t>(n / 2));
  for (int k = 0; k < n / 2; ++k) {
    tw[static_cast<std::size_t>(k)] =
        std::polar(1.0, -2.0 * std::numbers::pi * k / n);
  }
  return tw;
}

void fft1d(Cplx* a, int n, const std::vector<Cplx>& tw, bool inverse) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; (j & bit) != 0; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len / 2;
    const int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < half; ++k) {
        Cplx w = tw[static_cast<std::size_t>(k) * stride];
        if (inverse) w = std::conj(w);
        const Cplx u = a[i + k];
        const Cplx v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void transform2d(Spectrum& s, bool inverse) {
  const int w = s.width;
  const int h = s.height;
  const std::vector<Cplx> tw_w = make_twiddles(w);
  const std::vector<Cplx> tw_h = w == h ? tw_w : make_twiddles(h);

  for (int y = 0; y < h; ++y) fft1d(&s.at(y, 0), w, tw_w, inverse);

  std::vector<Cplx> col(static_cast<std::size_t>(h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) col[static_cast<std::size_t>(y)] = s.at(y, x);
    fft1d(col.data(), h, tw_h, inverse);
    for (int y = 0; y < h; ++y) s.at(y, x) = col[static_cast<std::size_t>(y)];
  }
}

Spectrum roll(const Spectrum& s, int dy, int dx, bool centered) {
  Spectrum out(s.width, s.height, centered);
  for (int y = 0; y < s.height; ++y) {
    const int ny = (y + dy) % s.height;
    for (int x = 0; x < s.width; ++x) {
      out.at(ny, (x + dx) % s.width) = s.at(y, x);
    }
  }
  return out;
}

}  // namespace

Spectrum fft2(const Plane& img) {
  if (img.empty()) throw ParameterError("fft2 of empty image");
  if (!is_power_of_two(img.width) || !is_power_of_two(img.height)) {
    throw ParameterError("fft2 dimensions must be powers of two");
  }
  Spectrum s(img.width, img.height, false);
  for (std::size_t i = 0; i < img.size(); ++i) s.data[i] = Cplx(img.data[i], 0.0);
  transform2d(s, false);
  return s;
}

InversePlane ifft2(const Spectrum& spec) {
  if (spec.centered) throw ParameterError("ifft2 requires an uncentered spectrum");
  if (!is_power_of_two(spec.width) || !is_power_of_two(spec.height)) {
    throw ParameterError("ifft2 dimensions must be powers of two");
  }
  Spectrum s = spec;
  transform2d(s, true);
  const double scale = 1.0 / (static_cast<double>(spec.width) * spec.height);
  InversePlane out;
  out.plane = Plane(spec.width, spec.height);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.plane.data[i] = s.data[i].real() * scale;
    out.max_imag = std::max(out.max_imag, std::abs(s.data[i].imag() * scale));
  }
  return out;
}

Spectrum fftshift(const Spectrum& s) {
  return roll(s, s.height / 2, s.width / 2, !s.centered);
}

Spectrum unshift(const Spectrum& s) {
  return roll(s, s.height - s.height / 2, s.width - s.width / 2, !s.centered);
}

}  // namespace ferfreq
