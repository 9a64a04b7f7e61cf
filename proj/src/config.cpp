#include "ferfreq/config.hpp"

#include <cstdio>

#include <json.hpp>

#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

using Json = nlohmann::ordered_json;
using SortedJson = nlohmann::json;  // std::map keys, canonical dump order

Json synth_json(const SynthSpec& s) { return Json::parse(synth_spec_to_json(s)); }
Json kernel_json(const KernelSpec& k) { return Json::parse(kernel_spec_to_json(k)); }

Json split_json(const SplitSpec& s) {
  return Json{{"ratio", s.ratio},
              {"seed", s.seed},
              {"granularity", granularity_name(s.granularity)}};
}

Json rf_json(const RFConfig& c) {
  return Json{{"n_trees", c.n_trees},
              {"max_depth", c.max_depth},
              {"features_per_split", c.features_per_split},
              {"min_samples_leaf", c.min_samples_leaf},
              {"seed", c.seed}};
}

Json mlp_json(const MLPConfig& c) {
  return Json{{"hidden", c.hidden},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"learning_rate", c.learning_rate},
              {"optimizer", c.optimizer},
              {"seed", c.seed}};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename T>
void maybe(const Json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

std::string config_to_json(const PipelineConfig& c) {
  Json doc;
  doc["data_dir"] = c.data_dir;
  doc["output_dir"] = c.output_dir;
  doc["image_size"] = c.image_size;
  doc["magnitude"] = c.magnitude;
  doc["synth"] = synth_json(c.synth);
  doc["kernels"] = kernel_json(c.kernels);
  doc["split"] = split_json(c.split);
  doc["row_fraction"] = c.row_fraction;
  doc["model"] = c.model;
  doc["rf"] = rf_json(c.rf);
  doc["mlp"] = mlp_json(c.mlp);
  doc["metrics"] = metric_mode_name(c.metric_mode);
  doc["aggregate_images"] = c.aggregate_images;
  return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text, PipelineConfig base) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed config json: ") + e.what());
  }
  try {
    maybe(doc, "data_dir", base.data_dir);
    maybe(doc, "output_dir", base.output_dir);
    maybe(doc, "image_size", base.image_size);
    maybe(doc, "magnitude", base.magnitude);
    if (doc.contains("synth")) base.synth = synth_spec_from_json(doc.at("synth").dump());
    if (doc.contains("kernels")) base.kernels = kernel_spec_from_json(doc.at("kernels").dump());
    if (doc.contains("split")) {
      const Json& s = doc.at("split");
      maybe(s, "ratio", base.split.ratio);
      maybe(s, "seed", base.split.seed);
      if (s.contains("granularity")) {
        base.split.granularity = granularity_from_name(s.at("granularity").get<std::string>());
      }
    }
    maybe(doc, "row_fraction", base.row_fraction);
    maybe(doc, "model", base.model);
    if (doc.contains("rf")) {
      const Json& r = doc.at("rf");
      maybe(r, "n_trees", base.rf.n_trees);
      maybe(r, "max_depth", base.rf.max_depth);
      maybe(r, "features_per_split", base.rf.features_per_split);
      maybe(r, "min_samples_leaf", base.rf.min_samples_leaf);
      maybe(r, "seed", base.rf.seed);
    }
    if (doc.contains("mlp")) {
      const Json& m = doc.at("mlp");
      maybe(m, "hidden", base.mlp.hidden);
      maybe(m, "epochs", base.mlp.epochs);
      maybe(m, "batch_size", base.mlp.batch_size);
      maybe(m, "learning_rate", base.mlp.learning_rate);
      maybe(m, "optimizer", base.mlp.optimizer);
      maybe(m, "seed", base.mlp.seed);
    }
    if (doc.contains("metrics")) {
      base.metric_mode = metric_mode_from_name(doc.at("metrics").get<std::string>());
    }
    maybe(doc, "aggregate_images", base.aggregate_images);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed config json: ") + e.what());
  }
  return base;
}

std::string config_hash(const PipelineConfig& c) {
  SortedJson identity;
  identity["data_dir"] = c.data_dir;
  identity["image_size"] = c.image_size;
  identity["magnitude"] = c.magnitude;
  identity["synth"] = SortedJson::parse(synth_spec_to_json(c.synth));
  identity["kernels"] = SortedJson::parse(kernel_spec_to_json(c.kernels));
  identity["split"] = SortedJson{{"ratio", c.split.ratio},
                                 {"seed", c.split.seed},
                                 {"granularity", granularity_name(c.split.granularity)}};
  identity["row_fraction"] = c.row_fraction;

  const std::uint64_t h = fnv1a(identity.dump());
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace ferfreq
