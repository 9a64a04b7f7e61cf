#pragma once

#include <string>

#include "ferfreq/image.hpp"

namespace ferfreq {

// Decodes a GIF, PGM/PNM, or PNG file into a single grayscale plane with
// values scaled to [0,1]. Color inputs are reduced with BT.601 luminance
// weights (0.299 R + 0.587 G + 0.114 B). Undecodable content raises
// FormatError carrying the path.
Plane decode_to_gray(const std::string& path);

}  // namespace ferfreq
