#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ferfreq/image.hpp"
#include "ferfreq/manifest.hpp"

namespace ferfreq {

// Synthetic corpus: per subject a random low-pass "face", per emotion a pure
// vertical-frequency cosine signature at the lower edge of its band, plus
// optional Gaussian pixel noise. Band lows sit inside disjoint default
// kernels, so a band-energy oracle classifies the corpus perfectly.
struct SynthSpec {
  int n_subjects = 15;
  std::array<int, 5> band_low = {15, 23, 31, 39, 47};  // kAllEmotions order
  int band_width = 2;
  double amplitude = 0.15;
  int lowpass_cutoff = 8;
  double noise_stddev = 0.01;
  int image_size = 128;
  std::uint64_t seed = 0;
};

std::string synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);

// The cosine frequency injected for an emotion.
int signature_frequency(const SynthSpec& spec, Emotion e);

struct SynthImage {
  Plane plane;
  std::uint8_t subject = 0;
  Emotion label = Emotion::kHappy;
};

struct SynthResult {
  std::vector<SynthImage> images;  // subject-major, emotions in id order
  DatasetManifest manifest;        // paths are bare file names until written
  std::uint64_t clamped_pixels = 0;
  std::uint64_t total_pixels = 0;
};

// Deterministic in spec.seed; warns on stderr when clamping exceeds 1% of
// pixels.
SynthResult generate(const SynthSpec& spec);

// Writes each image as an 8-bit PGM named subjectNN.<emotion> (no
// extension) under dir and returns the manifest with full paths.
DatasetManifest write_corpus(const SynthResult& r, const std::string& dir);

}  // namespace ferfreq
