#include "ferfreq/kernels.hpp"

#include <algorithm>
#include <cstdlib>

#include <json.hpp>

#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

using Json = nlohmann::ordered_json;

// Distance d passes the band [c, c+b); a band ending exactly at the Nyquist
// distance also claims it.
bool band_passes(int d, int offset, int band_width, int nyquist) {
  if (d >= offset && d < offset + band_width) return true;
  return offset + band_width == nyquist && d == nyquist;
}

}  // namespace

std::string orientation_policy_name(OrientationPolicy p) {
  switch (p) {
    case OrientationPolicy::kAllHorizontal: return "all-horizontal";
    case OrientationPolicy::kAllVertical: return "all-vertical";
    case OrientationPolicy::kAlternating: return "alternating";
  }
  return "invalid";
}

OrientationPolicy orientation_policy_from_name(const std::string& name) {
  if (name == "all-horizontal") return OrientationPolicy::kAllHorizontal;
  if (name == "all-vertical") return OrientationPolicy::kAllVertical;
  if (name == "alternating") return OrientationPolicy::kAlternating;
  throw ParameterError("unknown orientation policy: " + name);
}

std::string kernel_spec_to_json(const KernelSpec& spec) {
  Json doc;
  doc["p"] = spec.p;
  doc["b"] = spec.b;
  doc["start"] = spec.start;
  doc["stride"] = spec.stride;
  doc["orientation_policy"] = orientation_policy_name(spec.orientation_policy);
  doc["keep_dc"] = spec.keep_dc;
  return doc.dump(2) + "\n";
}

KernelSpec kernel_spec_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed kernel json: ") + e.what());
  }
  KernelSpec spec;
  try {
    spec.p = doc.at("p").get<int>();
    spec.b = doc.at("b").get<int>();
    spec.start = doc.at("start").get<int>();
    spec.stride = doc.at("stride").get<int>();
    spec.orientation_policy =
        orientation_policy_from_name(doc.at("orientation_policy").get<std::string>());
    spec.keep_dc = doc.at("keep_dc").get<bool>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed kernel json: ") + e.what());
  }
  return spec;
}

std::vector<BandKernel> make_kernels(const KernelSpec& spec, int width, int height) {
  if (!is_power_of_two(width) || !is_power_of_two(height)) {
    throw ParameterError("kernel dimensions must be powers of two");
  }
  if (spec.p < 1) throw ParameterError("kernel count must be at least 1");
  if (spec.b < 1) throw ParameterError("band width must be at least 1");
  if (spec.start < 0 || spec.stride < 0) {
    throw ParameterError("band offset and stride must be nonnegative");
  }
  const int nyquist = std::min(width, height) / 2;
  const int last = spec.start + (spec.p - 1) * spec.stride + spec.b;
  if (last > nyquist) {
    throw ParameterError("band exceeds Nyquist: offset " +
                         std::to_string(spec.start + (spec.p - 1) * spec.stride) + " width " +
                         std::to_string(spec.b) + " > " + std::to_string(nyquist));
  }

  std::vector<BandKernel> kernels;
  kernels.reserve(static_cast<std::size_t>(spec.p));
  for (int i = 1; i <= spec.p; ++i) {
    BandKernel k;
    k.index = i;
    switch (spec.orientation_policy) {
      case OrientationPolicy::kAllHorizontal: k.orientation = Orientation::kHorizontal; break;
      case OrientationPolicy::kAllVertical: k.orientation = Orientation::kVertical; break;
      case OrientationPolicy::kAlternating:
        k.orientation = (i % 2 == 1) ? Orientation::kHorizontal : Orientation::kVertical;
        break;
    }
    k.offset = spec.start + (i - 1) * spec.stride;
    k.band_width = spec.b;
    k.width = width;
    k.height = height;
    k.keep_dc = spec.keep_dc;
    k.mask.assign(static_cast<std::size_t>(width) * height, 0);

    const int axis_nyquist = k.orientation == Orientation::kHorizontal ? height / 2 : width / 2;
    for (int y = 0; y < height; ++y) {
      const int dy = std::abs(y - height / 2);
      for (int x = 0; x < width; ++x) {
        const int d = k.orientation == Orientation::kHorizontal ? dy : std::abs(x - width / 2);
        if (band_passes(d, k.offset, k.band_width, axis_nyquist)) {
          k.mask[static_cast<std::size_t>(y) * width + x] = 1;
        }
      }
    }
    if (!spec.keep_dc) {
      k.mask[static_cast<std::size_t>(height / 2) * width + width / 2] = 0;
    }
    kernels.push_back(std::move(k));
  }
  return kernels;
}

Spectrum apply_mask(const Spectrum& spec, const BandKernel& k) {
  if (!spec.centered) throw ParameterError("apply_mask requires a centered spectrum");
  if (spec.width != k.width || spec.height != k.height) {
    throw ParameterError("kernel dimensions do not match spectrum");
  }
  Spectrum out = spec;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    if (k.mask[i] == 0) out.data[i] = std::complex<double>(0.0, 0.0);
  }
  return out;
}

BandImage band_image(const Plane& img, const BandKernel& k) {
  const Spectrum masked = apply_mask(fftshift(fft2(img)), k);
  InversePlane inv = ifft2(unshift(masked));
  BandImage out;
  out.plane = std::move(inv.plane);
  out.kernel_index = k.index;
  out.max_imag = inv.max_imag;
  return out;
}

Plane mask_plane(const BandKernel& k) {
  Plane out(k.width, k.height);
  for (std::size_t i = 0; i < k.mask.size(); ++i) out.data[i] = k.mask[i];
  return out;
}

}  // namespace ferfreq
