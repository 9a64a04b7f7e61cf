#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ferfreq/feature_table.hpp"

namespace ferfreq {

struct LabelCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
};

// One-vs-rest counts per observed label (union of truth and predictions,
// ascending id). For every label tp+fp+tn+fn == total.
struct ConfusionCounts {
  std::vector<std::uint8_t> labels;
  std::vector<LabelCounts> counts;
  std::uint64_t total = 0;
};

ConfusionCounts confusion(const std::vector<std::uint8_t>& preds,
                          const std::vector<std::uint8_t>& truth);

// paper mode names TN/(TN+FP) "sensitivity" and TP/(TP+FN) "specificity",
// mirroring the published formulas; standard mode swaps the two names.
// Accuracy and precision agree across modes.
enum class MetricMode : std::uint8_t { kPaper, kStandard };

std::string metric_mode_name(MetricMode m);
MetricMode metric_mode_from_name(const std::string& name);

struct LabelMetrics {
  std::uint8_t label = 0;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> specificity;
  std::optional<double> sensitivity;
};

struct MetricsReport {
  MetricMode mode = MetricMode::kPaper;
  std::vector<LabelMetrics> per_label;
};

// Zero denominators yield disengaged optionals, never NaN.
MetricsReport metrics(const ConfusionCounts& c, MetricMode mode);

// Renderers share the column order accuracy, precision, specificity,
// sensitivity with percentages to two decimals. Undefined cells render as
// a dash in text, an empty CSV field, and JSON null.
std::string render_text(const MetricsReport& r);
std::string render_csv(const MetricsReport& r);
std::string render_json(const MetricsReport& r);

// Collapses per-pixel predictions to one prediction per image by majority
// vote (ties toward the smaller label id). Outputs are ordered by image id.
void aggregate_by_image(const FeatureTable& rows, const std::vector<std::uint8_t>& preds,
                        std::vector<std::uint8_t>& image_preds,
                        std::vector<std::uint8_t>& image_truth);

}  // namespace ferfreq
