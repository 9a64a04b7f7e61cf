#include "ferfreq/metrics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "ferfreq/error.hpp"
#include "ferfreq/labels.hpp"

namespace ferfreq {
namespace {

using Json = nlohmann::ordered_json;

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string percent_cell(const std::optional<double>& v, const char* undefined) {
  if (!v) return undefined;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v * 100.0);
  return buf;
}

}  // namespace

ConfusionCounts confusion(const std::vector<std::uint8_t>& preds,
                          const std::vector<std::uint8_t>& truth) {
  if (preds.size() != truth.size()) throw ParameterError("prediction/truth length mismatch");

  std::set<std::uint8_t> observed(truth.begin(), truth.end());
  observed.insert(preds.begin(), preds.end());

  ConfusionCounts c;
  c.labels.assign(observed.begin(), observed.end());
  c.counts.resize(c.labels.size());
  c.total = preds.size();
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    const std::uint8_t l = c.labels[i];
    LabelCounts& lc = c.counts[i];
    for (std::size_t r = 0; r < preds.size(); ++r) {
      const bool predicted = preds[r] == l;
      const bool actual = truth[r] == l;
      if (predicted && actual) ++lc.tp;
      else if (predicted && !actual) ++lc.fp;
      else if (!predicted && actual) ++lc.fn;
      else ++lc.tn;
    }
  }
  return c;
}

std::string metric_mode_name(MetricMode m) {
  return m == MetricMode::kPaper ? "paper" : "standard";
}

MetricMode metric_mode_from_name(const std::string& name) {
  if (name == "paper") return MetricMode::kPaper;
  if (name == "standard") return MetricMode::kStandard;
  throw ParameterError("unknown metric mode: " + name);
}

MetricsReport metrics(const ConfusionCounts& c, MetricMode mode) {
  MetricsReport r;
  r.mode = mode;
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    const LabelCounts& lc = c.counts[i];
    LabelMetrics m;
    m.label = c.labels[i];
    m.accuracy = ratio(lc.tp + lc.tn, lc.tp + lc.tn + lc.fp + lc.fn);
    m.precision = ratio(lc.tp, lc.tp + lc.fp);
    const std::optional<double> tpr = ratio(lc.tp, lc.tp + lc.fn);
    const std::optional<double> tnr = ratio(lc.tn, lc.tn + lc.fp);
    if (mode == MetricMode::kPaper) {
      m.sensitivity = tnr;
      m.specificity = tpr;
    } else {
      m.sensitivity = tpr;
      m.specificity = tnr;
    }
    r.per_label.push_back(m);
  }
  return r;
}

std::string render_text(const MetricsReport& r) {
  std::string out = "emotion      accuracy  precision  specificity  sensitivity\n";
  for (const LabelMetrics& m : r.per_label) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %8s  %9s  %11s  %11s\n",
                  std::string(emotion_name(*emotion_from_id(m.label))).c_str(),
                  percent_cell(m.accuracy, "—").c_str(),
                  percent_cell(m.precision, "—").c_str(),
                  percent_cell(m.specificity, "—").c_str(),
                  percent_cell(m.sensitivity, "—").c_str());
    out += line;
  }
  out += "mode: " + metric_mode_name(r.mode) + "\n";
  return out;
}

std::string render_csv(const MetricsReport& r) {
  std::string out = "emotion,accuracy,precision,specificity,sensitivity,mode\n";
  for (const LabelMetrics& m : r.per_label) {
    out += std::string(emotion_name(*emotion_from_id(m.label)));
    out += ',' + percent_cell(m.accuracy, "");
    out += ',' + percent_cell(m.precision, "");
    out += ',' + percent_cell(m.specificity, "");
    out += ',' + percent_cell(m.sensitivity, "");
    out += ',' + metric_mode_name(r.mode);
    out += '\n';
  }
  return out;
}

std::string render_json(const MetricsReport& r) {
  Json rows = Json::array();
  for (const LabelMetrics& m : r.per_label) {
    Json row;
    row["emotion"] = std::string(emotion_name(*emotion_from_id(m.label)));
    auto cell = [](const std::optional<double>& v) {
      return v ? Json(std::stod(percent_cell(v, ""))) : Json(nullptr);
    };
    row["accuracy"] = cell(m.accuracy);
    row["precision"] = cell(m.precision);
    row["specificity"] = cell(m.specificity);
    row["sensitivity"] = cell(m.sensitivity);
    row["mode"] = metric_mode_name(r.mode);
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

void aggregate_by_image(const FeatureTable& rows, const std::vector<std::uint8_t>& preds,
                        std::vector<std::uint8_t>& image_preds,
                        std::vector<std::uint8_t>& image_truth) {
  if (rows.n_rows() != preds.size()) throw ParameterError("prediction/table length mismatch");
  struct Tally {
    std::array<std::uint32_t, 6> votes{};
    std::uint8_t truth = 0;
  };
  std::map<std::uint16_t, Tally> by_image;
  for (std::size_t r = 0; r < preds.size(); ++r) {
    Tally& t = by_image[rows.image_ids[r]];
    ++t.votes[preds[r]];
    t.truth = rows.labels[r];
  }
  image_preds.clear();
  image_truth.clear();
  for (const auto& [id, t] : by_image) {
    int best = 1;
    for (int l = 2; l <= 5; ++l) {
      if (t.votes[l] > t.votes[best]) best = l;
    }
    image_preds.push_back(static_cast<std::uint8_t>(best));
    image_truth.push_back(t.truth);
  }
}

}  // namespace ferfreq
