#pragma once

#include "ferfreq/image.hpp"

namespace ferfreq {

// Resamples a plane to width x height with separable Catmull-Rom bicubic
// interpolation (a = -0.5). Sample positions are pixel-center aligned,
// source reads are edge-clamped, and the output is clamped to [0,1].
// Resizing to the input shape reproduces the input exactly.
Plane resize_bicubic(const Plane& src, int width, int height);

}  // namespace ferfreq
