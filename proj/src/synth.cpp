#include "ferfreq/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "ferfreq/error.hpp"
#include "ferfreq/pgm.hpp"
#include "ferfreq/rng.hpp"
#include "ferfreq/spectrum.hpp"

namespace ferfreq {
namespace {

using Json = nlohmann::ordered_json;

void validate(const SynthSpec& spec) {
  if (spec.n_subjects < 1 || spec.n_subjects > 255) {
    throw ParameterError("n_subjects must lie in [1,255]");
  }
  if (!is_power_of_two(spec.image_size)) {
    throw ParameterError("image_size must be a power of two");
  }
  if (spec.band_width < 1) throw ParameterError("band_width must be at least 1");
  if (spec.amplitude < 0.0 || spec.noise_stddev < 0.0) {
    throw ParameterError("amplitude and noise_stddev must be nonnegative");
  }
  if (spec.lowpass_cutoff < 1) throw ParameterError("lowpass_cutoff must be at least 1");
  const int nyquist = spec.image_size / 2;
  for (std::size_t i = 0; i < spec.band_low.size(); ++i) {
    if (spec.band_low[i] < 0 || spec.band_low[i] + spec.band_width > nyquist) {
      throw ParameterError("emotion band exceeds Nyquist");
    }
    if (i > 0 && spec.band_low[i - 1] + spec.band_width > spec.band_low[i]) {
      throw ParameterError("emotion bands must be disjoint and ascending");
    }
  }
  if (spec.band_low.front() <= spec.lowpass_cutoff) {
    throw ParameterError("emotion bands must sit above the face low-pass cutoff");
  }
}

// Random plane with spectral support confined to centered distances
// <= cutoff on both axes (DC removed), rescaled to deviations of at most 0.2
// around 0.5.
Plane make_face(int n, int cutoff, Rng& rng) {
  Plane raw(n, n);
  for (double& v : raw.data) v = rng.uniform() * 2.0 - 1.0;
  Spectrum s = fftshift(fft2(raw));
  const int c = n / 2;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int d = std::max(std::abs(y - c), std::abs(x - c));
      if (d > cutoff || d == 0) s.at(y, x) = {0.0, 0.0};
    }
  }
  Plane face = ifft2(unshift(s)).plane;
  double peak = 0.0;
  for (double v : face.data) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.2 / peak : 0.0;
  for (double& v : face.data) v = 0.5 + v * scale;
  return face;
}

}  // namespace

std::string synth_spec_to_json(const SynthSpec& spec) {
  Json doc;
  doc["n_subjects"] = spec.n_subjects;
  Json bands = Json::object();
  for (std::size_t i = 0; i < kAllEmotions.size(); ++i) {
    bands[std::string(emotion_name(kAllEmotions[i]))] = spec.band_low[i];
  }
  doc["band_low"] = std::move(bands);
  doc["band_width"] = spec.band_width;
  doc["amplitude"] = spec.amplitude;
  doc["lowpass_cutoff"] = spec.lowpass_cutoff;
  doc["noise_stddev"] = spec.noise_stddev;
  doc["image_size"] = spec.image_size;
  doc["seed"] = spec.seed;
  return doc.dump(2) + "\n";
}

SynthSpec synth_spec_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed synth json: ") + e.what());
  }
  SynthSpec spec;
  try {
    spec.n_subjects = doc.at("n_subjects").get<int>();
    for (std::size_t i = 0; i < kAllEmotions.size(); ++i) {
      spec.band_low[i] = doc.at("band_low").at(std::string(emotion_name(kAllEmotions[i]))).get<int>();
    }
    spec.band_width = doc.at("band_width").get<int>();
    spec.amplitude = doc.at("amplitude").get<double>();
    spec.lowpass_cutoff = doc.at("lowpass_cutoff").get<int>();
    spec.noise_stddev = doc.at("noise_stddev").get<double>();
    spec.image_size = doc.at("image_size").get<int>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed synth json: ") + e.what());
  }
  return spec;
}

int signature_frequency(const SynthSpec& spec, Emotion e) {
  return spec.band_low[static_cast<std::size_t>(emotion_id(e) - 1)];
}

SynthResult generate(const SynthSpec& spec) {
  validate(spec);
  const int n = spec.image_size;
  SynthResult out;

  for (int s = 1; s <= spec.n_subjects; ++s) {
    Rng face_rng(derive_seed(spec.seed, 0x10000u + static_cast<std::uint64_t>(s)));
    const Plane face = make_face(n, spec.lowpass_cutoff, face_rng);
    const double phase = face_rng.uniform() * 2.0 * std::numbers::pi;

    for (Emotion e : kAllEmotions) {
      const int f = signature_frequency(spec, e);
      Rng noise_rng(derive_seed(
          spec.seed, (static_cast<std::uint64_t>(s) << 8) | static_cast<std::uint64_t>(emotion_id(e))));

      SynthImage img;
      img.subject = static_cast<std::uint8_t>(s);
      img.label = e;
      img.plane = Plane(n, n);
      for (int y = 0; y < n; ++y) {
        const double wave =
            spec.amplitude * std::cos(2.0 * std::numbers::pi * f * y / n + phase);
        for (int x = 0; x < n; ++x) {
          double v = face.at(y, x) + wave;
          if (spec.noise_stddev > 0.0) v += spec.noise_stddev * noise_rng.gaussian();
          if (v < 0.0 || v > 1.0) {
            ++out.clamped_pixels;
            v = std::min(1.0, std::max(0.0, v));
          }
          img.plane.at(y, x) = v;
        }
      }
      out.total_pixels += img.plane.size();

      char name[32];
      std::snprintf(name, sizeof(name), "subject%02d.%s", s,
                    std::string(emotion_name(e)).c_str());
      out.manifest.entries.push_back({name, img.subject, e});
      out.images.push_back(std::move(img));
    }
  }

  if (out.total_pixels > 0 &&
      static_cast<double>(out.clamped_pixels) > 0.01 * static_cast<double>(out.total_pixels)) {
    std::cerr << "warning: amplitude/noise clamped "
              << 100.0 * static_cast<double>(out.clamped_pixels) /
                     static_cast<double>(out.total_pixels)
              << "% of pixels\n";
  }
  return out;
}

DatasetManifest write_corpus(const SynthResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());

  DatasetManifest m = r.manifest;
  for (std::size_t i = 0; i < r.images.size(); ++i) {
    const std::string path = (fs::path(dir) / m.entries[i].path).generic_string();
    write_pgm(r.images[i].plane, path);
    m.entries[i].path = path;
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.path < b.path; });
  return m;
}

}  // namespace ferfreq
