#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ferfreq {

// Row-major plane of real values. Ingest keeps values in [0,1]; band images
// reuse the same storage without the range restriction.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Plane() = default;
  Plane(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int y, int x) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  double at(int y, int x) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }
  bool same_shape(const Plane& o) const {
    return width == o.width && height == o.height;
  }
};

inline bool in_unit_range(const Plane& p) {
  for (double v : p.data) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) return false;
  }
  return true;
}

inline double max_abs_diff(const Plane& a, const Plane& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size() && i < b.data.size(); ++i) {
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  }
  return m;
}

}  // namespace ferfreq
