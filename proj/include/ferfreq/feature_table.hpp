#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ferfreq/kernels.hpp"
#include "ferfreq/manifest.hpp"

namespace ferfreq {

// Per-pixel observations in column-major-free SoA layout: row r holds
// features[r*p .. r*p+p), labels[r], subjects[r], image_ids[r],
// pixel_indices[r]. Feature values are f32-rounded at construction so the
// binary store roundtrips bit-exactly.
struct FeatureTable {
  int p = 0;
  std::vector<double> features;
  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> subjects;
  std::vector<std::uint16_t> image_ids;
  std::vector<std::uint32_t> pixel_indices;

  std::size_t n_rows() const { return labels.size(); }
  const double* row(std::size_t r) const { return features.data() + r * static_cast<std::size_t>(p); }
};

struct ExtractOptions {
  int image_size = 128;
  bool magnitude = false;  // feature = |s_i| instead of the real part
};

// Decodes, resizes, and band-filters every manifest image; emits one row per
// pixel in manifest order, pixels row-major. image_id is the entry's index
// in the manifest.
FeatureTable build_feature_table(const DatasetManifest& manifest,
                                 const std::vector<BandKernel>& kernels,
                                 const ExtractOptions& options = {});

void save_table(const FeatureTable& t, const std::string& path);
FeatureTable load_table(const std::string& path);

// CSV with header label,subject,image,pixel,f1..fp; floats at 9 significant
// digits.
void export_csv(const FeatureTable& t, const std::string& path);

struct Standardization {
  std::vector<double> mean;
  std::vector<double> stddev;                // population stddev
  std::vector<std::uint8_t> is_constant;     // flagged columns pass through
};

// Centers and scales each feature column to mean 0 / stddev 1; constant
// columns are left unchanged and flagged. Requires at least 2 rows.
std::pair<FeatureTable, Standardization> standardize(const FeatureTable& t);

// Applies previously computed constants (used at prediction time).
void apply_standardization(FeatureTable& t, const Standardization& s);

}  // namespace ferfreq
