#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ferfreq/image.hpp"

namespace ferfreq {

// Decoded raster before grayscale conversion. channels is 1 (gray) or 3
// (rgb); samples are interleaved, values in [0, maxval].
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  int maxval = 255;
  std::vector<std::uint16_t> samples;
};

// Reads PNM (P2/P5 grayscale, P3/P6 color), maxval up to 65535.
Raster read_pnm(const std::string& path);

// Writes an 8-bit binary PGM (P5). Input values must lie in [0,1]; they are
// quantized to round(v * 255).
void write_pgm(const Plane& img, const std::string& path);

// Writes an 8-bit PGM after per-plane min-max scaling, for visual inspection
// of masks and band images. A constant plane writes as all zeros.
void write_pgm_minmax(const Plane& img, const std::string& path);

}  // namespace ferfreq
