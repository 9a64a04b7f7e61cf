#include "ferfreq/forest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ferfreq/error.hpp"
#include "ferfreq/rng.hpp"

namespace ferfreq {
namespace {

// Label ids are 1..5, so fixed-size count arrays suffice.
struct ClassCounts {
  std::array<std::uint32_t, 6> c{};
  std::uint32_t total = 0;

  void add(std::uint8_t label) {
    ++c[label];
    ++total;
  }
  bool pure() const {
    for (int l = 1; l <= 5; ++l) {
      if (c[l] == total) return true;
    }
    return false;
  }
  std::uint8_t majority() const {
    int best = 1;
    for (int l = 2; l <= 5; ++l) {
      if (c[l] > c[best]) best = l;
    }
    return static_cast<std::uint8_t>(best);
  }
  // Sum of squared counts; the Gini-optimal split maximizes
  // suml2/nl + sumr2/nr, all integer-derived and exact in double.
  double sum_sq() const {
    double s = 0.0;
    for (int l = 1; l <= 5; ++l) s += static_cast<double>(c[l]) * c[l];
    return s;
  }
};

struct WorkItem {
  std::int32_t node;
  std::uint32_t lo;
  std::uint32_t hi;
  int depth;
};

Tree grow_tree(const FeatureTable& t, const RFConfig& cfg, int mtry, Rng& rng) {
  const std::size_t n = t.n_rows();
  const std::size_t p = static_cast<std::size_t>(t.p);

  std::vector<std::uint32_t> samples(n);
  for (std::uint32_t& s : samples) s = static_cast<std::uint32_t>(rng.below(n));

  std::vector<std::uint32_t> feat_pool(p);
  std::iota(feat_pool.begin(), feat_pool.end(), 0);

  Tree tree;
  tree.nodes.emplace_back();
  std::vector<WorkItem> stack = {{0, 0, static_cast<std::uint32_t>(n), 0}};
  const std::uint32_t min_leaf = static_cast<std::uint32_t>(cfg.min_samples_leaf);

  auto value = [&](std::uint32_t sample, std::uint32_t f) {
    return t.features[static_cast<std::size_t>(sample) * p + f];
  };
  auto by_feature = [&](std::uint32_t f) {
    return [&, f](std::uint32_t a, std::uint32_t b) {
      const double va = value(a, f);
      const double vb = value(b, f);
      return va != vb ? va < vb : a < b;
    };
  };

  while (!stack.empty()) {
    const WorkItem w = stack.back();
    stack.pop_back();
    const std::uint32_t m = w.hi - w.lo;

    ClassCounts counts;
    for (std::uint32_t i = w.lo; i < w.hi; ++i) counts.add(t.labels[samples[i]]);

    const bool depth_capped = cfg.max_depth > 0 && w.depth >= cfg.max_depth;
    if (counts.pure() || m < 2 * min_leaf || m < 2 || depth_capped) {
      tree.nodes[static_cast<std::size_t>(w.node)].label = counts.majority();
      continue;
    }

    // Candidate features: partial Fisher-Yates draw of mtry distinct indices.
    for (int j = 0; j < mtry; ++j) {
      const std::size_t k = j + rng.below(p - static_cast<std::size_t>(j));
      std::swap(feat_pool[static_cast<std::size_t>(j)], feat_pool[k]);
    }

    const double parent_score = counts.sum_sq() / m;
    double best_score = parent_score + 1e-12;
    std::int32_t best_f = -1;
    double best_thr = 0.0;
    std::uint32_t best_nl = 0;

    for (int j = 0; j < mtry; ++j) {
      const std::uint32_t f = feat_pool[static_cast<std::size_t>(j)];
      std::sort(samples.begin() + w.lo, samples.begin() + w.hi, by_feature(f));

      std::array<std::uint32_t, 6> left{};
      double suml2 = 0.0;
      double sumr2 = counts.sum_sq();
      for (std::uint32_t i = 0; i + 1 < m; ++i) {
        const std::uint32_t s = samples[w.lo + i];
        const std::uint8_t l = t.labels[s];
        suml2 += 2.0 * left[l] + 1.0;
        sumr2 -= 2.0 * (counts.c[l] - left[l]) - 1.0;
        ++left[l];
        const std::uint32_t nl = i + 1;
        const std::uint32_t nr = m - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double v = value(s, f);
        if (v == value(samples[w.lo + i + 1], f)) continue;
        const double score = suml2 / nl + sumr2 / nr;
        if (score > best_score) {
          best_score = score;
          best_f = static_cast<std::int32_t>(f);
          best_thr = v;
          best_nl = nl;
        }
      }
    }

    if (best_f < 0) {
      tree.nodes[static_cast<std::size_t>(w.node)].label = counts.majority();
      continue;
    }

    std::sort(samples.begin() + w.lo, samples.begin() + w.hi,
              by_feature(static_cast<std::uint32_t>(best_f)));
    const std::uint32_t mid = w.lo + best_nl;
    const std::int32_t left_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::int32_t right_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode& node = tree.nodes[static_cast<std::size_t>(w.node)];
    node.feature = best_f;
    node.threshold = best_thr;
    node.left = left_id;
    node.right = right_id;
    stack.push_back({right_id, mid, w.hi, w.depth + 1});
    stack.push_back({left_id, w.lo, mid, w.depth + 1});
  }
  return tree;
}

}  // namespace

Forest train_forest(const FeatureTable& train, const RFConfig& cfg) {
  if (train.n_rows() == 0) throw ParameterError("empty training table");
  if (cfg.n_trees < 1) throw ParameterError("n_trees must be at least 1");
  if (cfg.min_samples_leaf < 1) throw ParameterError("min_samples_leaf must be at least 1");

  const std::set<std::uint8_t> labels(train.labels.begin(), train.labels.end());
  if (labels.size() < 2) throw TrainingError("training table has a single label");

  int mtry = cfg.features_per_split;
  if (mtry == 0) mtry = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(train.p))));
  if (mtry < 1 || mtry > train.p) throw ParameterError("features_per_split outside [1, p]");

  Forest f;
  f.p = train.p;
  f.classes.assign(labels.begin(), labels.end());
  f.trees.resize(static_cast<std::size_t>(cfg.n_trees));
  for (int i = 0; i < cfg.n_trees; ++i) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(i));
    f.trees[static_cast<std::size_t>(i)] = grow_tree(train, cfg, mtry, rng);
  }
  return f;
}

std::uint8_t tree_predict(const Tree& tree, const double* row) {
  std::int32_t id = 0;
  for (;;) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
    if (node.feature < 0) return node.label;
    id = row[node.feature] <= node.threshold ? node.left : node.right;
  }
}

ForestVotes forest_predict(const Forest& f, const FeatureTable& rows) {
  if (rows.p != f.p) throw ParameterError("feature width does not match forest");
  ForestVotes out;
  const std::size_t n = rows.n_rows();
  const std::size_t nc = f.classes.size();
  out.labels.resize(n);
  out.votes.assign(n * nc, 0.0);

  std::array<int, 6> class_col{};
  class_col.fill(-1);
  for (std::size_t c = 0; c < nc; ++c) class_col[f.classes[c]] = static_cast<int>(c);

  for (std::size_t r = 0; r < n; ++r) {
    const double* row = rows.row(r);
    std::array<std::uint32_t, 6> votes{};
    for (const Tree& tree : f.trees) ++votes[tree_predict(tree, row)];
    int best = 1;
    for (int l = 2; l <= 5; ++l) {
      if (votes[l] > votes[best]) best = l;  // strict: ties keep the smaller id
    }
    out.labels[r] = static_cast<std::uint8_t>(best);
    for (int l = 1; l <= 5; ++l) {
      if (class_col[l] >= 0) out.votes[r * nc + static_cast<std::size_t>(class_col[l])] = votes[l];
    }
  }
  return out;
}

}  // namespace ferfreq
