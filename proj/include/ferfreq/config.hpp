#pragma once

#include <string>

#include "ferfreq/forest.hpp"
#include "ferfreq/kernels.hpp"
#include "ferfreq/metrics.hpp"
#include "ferfreq/network.hpp"
#include "ferfreq/split.hpp"
#include "ferfreq/synth.hpp"

namespace ferfreq {

struct PipelineConfig {
  std::string data_dir;
  std::string output_dir = ".";
  int image_size = 128;
  bool magnitude = false;
  SynthSpec synth;
  KernelSpec kernels;
  SplitSpec split;
  double row_fraction = 1.0;
  std::string model = "rf";  // "rf" | "mlp"
  RFConfig rf;
  MLPConfig mlp;
  MetricMode metric_mode = MetricMode::kPaper;
  bool aggregate_images = false;
};

// Full config echo, embedded verbatim in artifacts.
std::string config_to_json(const PipelineConfig& c);

// Overlays fields present in the document onto `base` (missing fields keep
// their values), so a config file combines with flag overrides.
PipelineConfig config_from_json(const std::string& text, PipelineConfig base = {});

// FNV-1a over the canonical identity document: corpus location, synth,
// kernels, extraction, and split parameters. Model choice, metric mode, and
// output paths are excluded, so evaluations of different learners on the
// same pipeline share a hash and can be combined in one report.
std::string config_hash(const PipelineConfig& c);

}  // namespace ferfreq
