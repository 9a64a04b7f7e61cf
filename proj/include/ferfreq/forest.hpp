#pragma once

#include <cstdint>
#include <vector>

#include "ferfreq/feature_table.hpp"

namespace ferfreq {

struct RFConfig {
  int n_trees = 100;
  int max_depth = 0;            // 0 = unbounded
  int features_per_split = 0;   // 0 = ceil(sqrt(p))
  int min_samples_leaf = 1;
  std::uint64_t seed = 0;
};

// Axis-aligned split: rows with feature value <= threshold go left. The
// threshold is the largest value routed left, so predictions are invariant
// under strictly monotone per-feature transforms.
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint8_t label = 0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct Forest {
  int p = 0;
  std::vector<Tree> trees;
  std::vector<std::uint8_t> classes;  // sorted distinct training labels
};

// Grows n_trees CART trees on bootstrap resamples with Gini splits over
// features_per_split uniformly drawn candidates. Tree i draws from a
// generator seeded with seed+i, so results do not depend on scheduling.
Forest train_forest(const FeatureTable& train, const RFConfig& cfg);

std::uint8_t tree_predict(const Tree& tree, const double* row);

// Vote counts per class (columns follow forest.classes); ties break toward
// the smaller label id.
struct ForestVotes {
  std::vector<std::uint8_t> labels;
  std::vector<double> votes;  // n_rows x n_classes
};
ForestVotes forest_predict(const Forest& f, const FeatureTable& rows);

}  // namespace ferfreq
