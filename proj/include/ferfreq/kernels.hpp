#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ferfreq/image.hpp"
#include "ferfreq/spectrum.hpp"

namespace ferfreq {

enum class Orientation : std::uint8_t { kHorizontal, kVertical };

// Orientation assignment across a kernel set; alternating starts horizontal
// (odd indices horizontal, even vertical).
enum class OrientationPolicy : std::uint8_t { kAllHorizontal, kAllVertical, kAlternating };

std::string orientation_policy_name(OrientationPolicy p);
OrientationPolicy orientation_policy_from_name(const std::string& name);

// Parameters of a kernel set. Kernel i (1-based) gets offset start+(i-1)*stride.
struct KernelSpec {
  int p = 25;
  int b = 2;
  int start = 14;
  int stride = 2;
  OrientationPolicy orientation_policy = OrientationPolicy::kAllHorizontal;
  bool keep_dc = false;
};

std::string kernel_spec_to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const std::string& text);

// Binary mask over a centered spectrum. A horizontal-band kernel passes the
// bins whose vertical distance d from the center row satisfies
// offset <= d < offset+band_width, at every column; vertical-band mirrors
// this across columns. A band reaching exactly min(width,height)/2 also
// passes the Nyquist distance, so contiguous bands tile the half-spectrum
// without leaving the Nyquist row orphaned. keep_dc=false zeroes the single
// DC bin regardless of the band; keep_dc=true leaves the band's verdict.
struct BandKernel {
  int index = 1;
  Orientation orientation = Orientation::kHorizontal;
  int offset = 0;
  int band_width = 1;
  int width = 0;
  int height = 0;
  bool keep_dc = false;
  std::vector<std::uint8_t> mask;  // centered, row-major, values 0/1

  std::uint8_t at(int y, int x) const {
    return mask[static_cast<std::size_t>(y) * width + x];
  }
};

struct BandImage {
  Plane plane;
  int kernel_index = 0;
  double max_imag = 0.0;
};

// Builds the kernel set for width x height (powers of two) spectra.
// Requires start + (p-1)*stride + b <= min(width,height)/2.
std::vector<BandKernel> make_kernels(const KernelSpec& spec, int width, int height);

// Pointwise product of a centered spectrum with the 0/1 mask.
Spectrum apply_mask(const Spectrum& spec, const BandKernel& k);

// ifft2(unshift(apply_mask(fftshift(fft2(img)), k))).
BandImage band_image(const Plane& img, const BandKernel& k);

// Mask as a 0/1 plane, e.g. for PGM export.
Plane mask_plane(const BandKernel& k);

}  // namespace ferfreq
