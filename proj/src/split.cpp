#include "ferfreq/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "ferfreq/error.hpp"
#include "ferfreq/rng.hpp"

namespace ferfreq {
namespace {

// Shuffles the unit ids and marks the first round(ratio*n) as train.
template <typename Id>
std::set<Id> pick_train_units(std::vector<Id> units, double ratio, std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(units);
  const std::size_t n_train =
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(units.size())));
  return std::set<Id>(units.begin(), units.begin() + static_cast<std::ptrdiff_t>(n_train));
}

}  // namespace

Split split_domain(const FeatureTable& t, const SplitSpec& s) {
  if (!(s.ratio > 0.0 && s.ratio < 1.0)) throw ParameterError("split ratio must lie in (0,1)");
  if (t.n_rows() == 0) throw ParameterError("empty table");

  const std::size_t n = t.n_rows();
  std::vector<std::uint32_t> train_rows;
  std::vector<std::uint32_t> test_rows;

  if (s.granularity == SplitGranularity::kPixel) {
    std::vector<std::uint32_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0u);
    Rng rng(s.seed);
    rng.shuffle(rows);
    const std::size_t n_train =
        static_cast<std::size_t>(std::llround(s.ratio * static_cast<double>(n)));
    train_rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_rows.assign(rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
  } else {
    const bool by_image = s.granularity == SplitGranularity::kImage;
    std::set<std::uint32_t> unit_set;
    for (std::size_t r = 0; r < n; ++r) {
      unit_set.insert(by_image ? t.image_ids[r] : t.subjects[r]);
    }
    const std::set<std::uint32_t> train_units = pick_train_units(
        std::vector<std::uint32_t>(unit_set.begin(), unit_set.end()), s.ratio, s.seed);
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint32_t unit = by_image ? t.image_ids[r] : t.subjects[r];
      (train_units.count(unit) != 0 ? train_rows : test_rows)
          .push_back(static_cast<std::uint32_t>(r));
    }
  }

  return {take_rows(t, train_rows), take_rows(t, test_rows)};
}

std::vector<std::uint32_t> stratified_rows(const FeatureTable& t, double fraction,
                                           std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ParameterError("row fraction must lie in (0,1]");
  }
  std::vector<std::vector<std::uint32_t>> by_label(6);
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    by_label[t.labels[r]].push_back(static_cast<std::uint32_t>(r));
  }
  Rng rng(seed);
  std::vector<std::uint32_t> picked;
  for (int l = 1; l <= 5; ++l) {
    std::vector<std::uint32_t>& rows = by_label[static_cast<std::size_t>(l)];
    if (rows.empty()) continue;
    rng.shuffle(rows);
    std::size_t keep =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(rows.size())));
    keep = std::max<std::size_t>(keep, 1);
    picked.insert(picked.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

FeatureTable take_rows(const FeatureTable& t, const std::vector<std::uint32_t>& rows) {
  FeatureTable out;
  out.p = t.p;
  const std::size_t p = static_cast<std::size_t>(t.p);
  out.features.resize(rows.size() * p);
  out.labels.resize(rows.size());
  out.subjects.resize(rows.size());
  out.image_ids.resize(rows.size());
  out.pixel_indices.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    std::copy_n(t.features.begin() + static_cast<std::ptrdiff_t>(r * p), p,
                out.features.begin() + static_cast<std::ptrdiff_t>(i * p));
    out.labels[i] = t.labels[r];
    out.subjects[i] = t.subjects[r];
    out.image_ids[i] = t.image_ids[r];
    out.pixel_indices[i] = t.pixel_indices[r];
  }
  return out;
}

std::string granularity_name(SplitGranularity g) {
  switch (g) {
    case SplitGranularity::kPixel: return "pixel";
    case SplitGranularity::kImage: return "image";
    case SplitGranularity::kSubject: return "subject";
  }
  return "invalid";
}

SplitGranularity granularity_from_name(const std::string& name) {
  if (name == "pixel") return SplitGranularity::kPixel;
  if (name == "image") return SplitGranularity::kImage;
  if (name == "subject") return SplitGranularity::kSubject;
  throw ParameterError("unknown split granularity: " + name);
}

}  // namespace ferfreq
