#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ferfreq/feature_table.hpp"
#include "ferfreq/forest.hpp"
#include "ferfreq/network.hpp"

namespace ferfreq {

enum class ModelKind : std::uint8_t { kForest = 1, kNetwork = 2 };

// A trained classifier plus everything needed to reproduce and apply it:
// the learner parameters, the feature standardization (networks only), the
// training configuration, and the pipeline config echo for provenance.
struct TrainedModel {
  ModelKind kind = ModelKind::kForest;
  Forest forest;
  Mlp network;
  bool standardized = false;
  Standardization standardization;
  RFConfig rf_config;
  MLPConfig mlp_config;
  std::string config_echo;  // pipeline config JSON, may be empty

  int feature_width() const {
    return kind == ModelKind::kForest ? forest.p : static_cast<int>(network.w.front().cols());
  }
  const std::vector<std::uint8_t>& classes() const {
    return kind == ModelKind::kForest ? forest.classes : network.classes;
  }
};

TrainedModel train_forest_model(const FeatureTable& train, const RFConfig& cfg);

// Standardizes the features, trains the network on the transformed table,
// and records the constants so prediction applies the same transform.
TrainedModel train_network_model(const FeatureTable& train, const MLPConfig& cfg);

struct Prediction {
  std::vector<std::uint8_t> labels;
  std::vector<double> scores;  // n_rows x n_classes: votes or probabilities
  std::vector<std::uint8_t> classes;
};

Prediction predict(const TrainedModel& m, const FeatureTable& rows);

void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);

// JSON summary: kind, classes, feature width, tree counts/depths or layer
// shapes.
std::string describe(const TrainedModel& m);

}  // namespace ferfreq
