#pragma once

#include <cstdint>
#include <vector>

#include "ferfreq/feature_table.hpp"

namespace ferfreq {

// pixel: rows are assigned independently; image/subject: whole images or
// subjects land on one side, preventing identity leakage across the split.
enum class SplitGranularity : std::uint8_t { kPixel, kImage, kSubject };

struct SplitSpec {
  double ratio = 0.8;
  std::uint64_t seed = 0;
  SplitGranularity granularity = SplitGranularity::kPixel;
};

struct Split {
  FeatureTable train;
  FeatureTable test;
};

// Deterministic partition: train gets round(ratio * units) shuffled units;
// both sides preserve the input row order. Ratio must lie in (0,1).
Split split_domain(const FeatureTable& t, const SplitSpec& s);

// Row indices of a label-stratified subsample, ascending. Each label keeps
// round(fraction * count) rows, at least one. Fraction must lie in (0,1].
std::vector<std::uint32_t> stratified_rows(const FeatureTable& t, double fraction,
                                           std::uint64_t seed);

FeatureTable take_rows(const FeatureTable& t, const std::vector<std::uint32_t>& rows);

std::string granularity_name(SplitGranularity g);
SplitGranularity granularity_from_name(const std::string& name);

}  // namespace ferfreq
