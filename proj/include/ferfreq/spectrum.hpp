#pragma once

#include <complex>
#include <vector>

#include "ferfreq/image.hpp"

namespace ferfreq {

// Row-major complex spectrum. `centered` records whether DC sits at
// (height/2, width/2) instead of (0,0).
struct Spectrum {
  int width = 0;
  int height = 0;
  bool centered = false;
  std::vector<std::complex<double>> data;

  Spectrum() = default;
  Spectrum(int w, int h, bool c = false)
      : width(w), height(h), centered(c),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {}

  std::complex<double>& at(int y, int x) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  const std::complex<double>& at(int y, int x) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t size() const { return data.size(); }
};

// Real plane recovered by an inverse transform, with the largest imaginary
// magnitude that was discarded (should be ~0 under symmetric masks).
struct InversePlane {
  Plane plane;
  double max_imag = 0.0;
};

constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Unnormalized forward DFT of a real plane; result is uncentered.
// Dimensions must be powers of two.
Spectrum fft2(const Plane& img);

// Inverse DFT scaled by 1/(width*height) of an uncentered spectrum.
InversePlane ifft2(const Spectrum& spec);

// Quadrant swap moving DC to the center, and its exact inverse. Both toggle
// the `centered` flag; unshift(fftshift(s)) == s exactly.
Spectrum fftshift(const Spectrum& s);
Spectrum unshift(const Spectrum& s);

}  // namespace ferfreq
