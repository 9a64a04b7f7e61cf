#include "ferfreq/model.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "binio.hpp"
#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

constexpr char kMagic[7] = {'F', 'E', 'R', 'M', 'D', '1', '\0'};

using Json = nlohmann::ordered_json;

void put_string(std::string& buf, const std::string& s) {
  binio::put_u32(buf, static_cast<std::uint32_t>(s.size()));
  buf.append(s);
}

std::string get_string(binio::Reader& r) {
  const std::uint32_t len = r.u32();
  std::string s(len, '\0');
  if (len > 0) r.bytes(s.data(), len);
  return s;
}

void put_i32(std::string& buf, std::int32_t v) {
  binio::put_u32(buf, static_cast<std::uint32_t>(v));
}

std::int32_t get_i32(binio::Reader& r) { return static_cast<std::int32_t>(r.u32()); }

}  // namespace

TrainedModel train_forest_model(const FeatureTable& train, const RFConfig& cfg) {
  TrainedModel m;
  m.kind = ModelKind::kForest;
  m.rf_config = cfg;
  m.forest = train_forest(train, cfg);
  return m;
}

TrainedModel train_network_model(const FeatureTable& train, const MLPConfig& cfg) {
  TrainedModel m;
  m.kind = ModelKind::kNetwork;
  m.mlp_config = cfg;
  auto [table, constants] = standardize(train);
  m.standardized = true;
  m.standardization = std::move(constants);
  m.network = train_network(table, cfg);
  return m;
}

Prediction predict(const TrainedModel& m, const FeatureTable& rows) {
  if (rows.p != m.feature_width()) throw ParameterError("feature width does not match model");
  Prediction out;
  out.classes = m.classes();

  if (m.kind == ModelKind::kForest) {
    ForestVotes votes = forest_predict(m.forest, rows);
    out.labels = std::move(votes.labels);
    out.scores = std::move(votes.votes);
    return out;
  }

  FeatureTable table = rows;
  apply_standardization(table, m.standardization);
  const std::size_t n = table.n_rows();
  const std::size_t p = static_cast<std::size_t>(table.p);
  Eigen::MatrixXd x(p, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < p; ++k) {
      x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r)) = table.features[r * p + k];
    }
  }
  const Eigen::MatrixXd probs = mlp_probabilities(m.network, x);
  out.labels.resize(n);
  out.scores.resize(n * out.classes.size());
  for (std::size_t r = 0; r < n; ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < probs.cols(); ++c) {
      if (probs(static_cast<Eigen::Index>(r), c) > probs(static_cast<Eigen::Index>(r), best)) {
        best = c;  // strict: argmax ties keep the smaller class index
      }
    }
    out.labels[r] = out.classes[static_cast<std::size_t>(best)];
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      out.scores[r * out.classes.size() + static_cast<std::size_t>(c)] =
          probs(static_cast<Eigen::Index>(r), c);
    }
  }
  return out;
}

void save_model(const TrainedModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);

  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  binio::put_u8(buf, static_cast<std::uint8_t>(m.kind));

  const std::vector<std::uint8_t>& classes = m.classes();
  binio::put_u8(buf, static_cast<std::uint8_t>(classes.size()));
  for (std::uint8_t c : classes) binio::put_u8(buf, c);

  binio::put_u8(buf, m.standardized ? 1 : 0);
  if (m.standardized) {
    binio::put_u16(buf, static_cast<std::uint16_t>(m.standardization.mean.size()));
    for (double v : m.standardization.mean) binio::put_f64(buf, v);
    for (double v : m.standardization.stddev) binio::put_f64(buf, v);
    for (std::uint8_t v : m.standardization.is_constant) binio::put_u8(buf, v);
  }
  put_string(buf, m.config_echo);

  if (m.kind == ModelKind::kForest) {
    put_i32(buf, m.rf_config.n_trees);
    put_i32(buf, m.rf_config.max_depth);
    put_i32(buf, m.rf_config.features_per_split);
    put_i32(buf, m.rf_config.min_samples_leaf);
    binio::put_u64(buf, m.rf_config.seed);
    binio::put_u16(buf, static_cast<std::uint16_t>(m.forest.p));
    binio::put_u32(buf, static_cast<std::uint32_t>(m.forest.trees.size()));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    for (const Tree& tree : m.forest.trees) {
      buf.clear();
      binio::put_u32(buf, static_cast<std::uint32_t>(tree.nodes.size()));
      for (const TreeNode& node : tree.nodes) {
        put_i32(buf, node.feature);
        binio::put_f64(buf, node.threshold);
        put_i32(buf, node.left);
        put_i32(buf, node.right);
        binio::put_u8(buf, node.label);
      }
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
  } else {
    binio::put_u16(buf, static_cast<std::uint16_t>(m.mlp_config.hidden.size()));
    for (int h : m.mlp_config.hidden) put_i32(buf, h);
    put_i32(buf, m.mlp_config.epochs);
    put_i32(buf, m.mlp_config.batch_size);
    binio::put_f64(buf, m.mlp_config.learning_rate);
    binio::put_u8(buf, m.mlp_config.optimizer == "adam" ? 0 : 1);
    binio::put_u64(buf, m.mlp_config.seed);
    binio::put_u32(buf, static_cast<std::uint32_t>(m.network.epoch_losses.size()));
    for (double v : m.network.epoch_losses) binio::put_f64(buf, v);
    binio::put_u16(buf, static_cast<std::uint16_t>(m.network.w.size()));
    for (std::size_t l = 0; l < m.network.w.size(); ++l) {
      const Eigen::MatrixXd& w = m.network.w[l];
      binio::put_u32(buf, static_cast<std::uint32_t>(w.rows()));
      binio::put_u32(buf, static_cast<std::uint32_t>(w.cols()));
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        for (Eigen::Index r = 0; r < w.rows(); ++r) binio::put_f64(buf, w(r, c));
      }
      for (Eigen::Index r = 0; r < m.network.b[l].size(); ++r) {
        binio::put_f64(buf, m.network.b[l](r));
      }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw IoError("write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  binio::Reader r(in, path);

  char magic[7];
  r.bytes(magic, 7);
  if (!std::equal(magic, magic + 7, kMagic)) throw FormatError("bad magic: " + path);

  TrainedModel m;
  const std::uint8_t kind = r.u8();
  if (kind != 1 && kind != 2) throw FormatError("unknown model kind: " + path);
  m.kind = static_cast<ModelKind>(kind);

  const std::uint8_t n_classes = r.u8();
  std::vector<std::uint8_t> classes(n_classes);
  for (std::uint8_t& c : classes) {
    c = r.u8();
    if (c < 1 || c > 5) throw FormatError("class id out of range: " + path);
  }

  m.standardized = r.u8() != 0;
  if (m.standardized) {
    const std::uint16_t p = r.u16();
    m.standardization.mean.resize(p);
    m.standardization.stddev.resize(p);
    m.standardization.is_constant.resize(p);
    for (double& v : m.standardization.mean) v = r.f64();
    for (double& v : m.standardization.stddev) v = r.f64();
    for (std::uint8_t& v : m.standardization.is_constant) v = r.u8();
  }
  m.config_echo = get_string(r);

  if (m.kind == ModelKind::kForest) {
    m.rf_config.n_trees = get_i32(r);
    m.rf_config.max_depth = get_i32(r);
    m.rf_config.features_per_split = get_i32(r);
    m.rf_config.min_samples_leaf = get_i32(r);
    m.rf_config.seed = r.u64();
    m.forest.p = r.u16();
    m.forest.classes = std::move(classes);
    m.forest.trees.resize(r.u32());
    for (Tree& tree : m.forest.trees) {
      tree.nodes.resize(r.u32());
      for (TreeNode& node : tree.nodes) {
        node.feature = get_i32(r);
        node.threshold = r.f64();
        node.left = get_i32(r);
        node.right = get_i32(r);
        node.label = r.u8();
      }
    }
  } else {
    m.mlp_config.hidden.resize(r.u16());
    for (int& h : m.mlp_config.hidden) h = get_i32(r);
    m.mlp_config.epochs = get_i32(r);
    m.mlp_config.batch_size = get_i32(r);
    m.mlp_config.learning_rate = r.f64();
    m.mlp_config.optimizer = r.u8() == 0 ? "adam" : "sgd";
    m.mlp_config.seed = r.u64();
    m.network.classes = std::move(classes);
    m.network.epoch_losses.resize(r.u32());
    for (double& v : m.network.epoch_losses) v = r.f64();
    const std::uint16_t layers = r.u16();
    m.network.w.resize(layers);
    m.network.b.resize(layers);
    for (std::uint16_t l = 0; l < layers; ++l) {
      const std::uint32_t rows = r.u32();
      const std::uint32_t cols = r.u32();
      m.network.w[l].resize(rows, cols);
      for (std::uint32_t c = 0; c < cols; ++c) {
        for (std::uint32_t row = 0; row < rows; ++row) m.network.w[l](row, c) = r.f64();
      }
      m.network.b[l].resize(rows);
      for (std::uint32_t row = 0; row < rows; ++row) m.network.b[l](row) = r.f64();
    }
  }
  return m;
}

std::string describe(const TrainedModel& m) {
  Json doc;
  doc["kind"] = m.kind == ModelKind::kForest ? "forest" : "network";
  Json classes = Json::array();
  for (std::uint8_t c : m.classes()) {
    classes.push_back({{"id", static_cast<int>(c)},
                       {"name", std::string(emotion_name(*emotion_from_id(c)))}});
  }
  doc["classes"] = std::move(classes);
  doc["feature_width"] = m.feature_width();
  if (m.kind == ModelKind::kForest) {
    std::size_t total_nodes = 0;
    int max_depth = 0;
    for (const Tree& tree : m.forest.trees) {
      total_nodes += tree.nodes.size();
      // Depth by walking: node 0 root; compute via stack.
      std::vector<std::pair<std::int32_t, int>> stack = {{0, 0}};
      while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
        if (node.feature < 0) {
          max_depth = std::max(max_depth, d);
        } else {
          stack.push_back({node.left, d + 1});
          stack.push_back({node.right, d + 1});
        }
      }
    }
    doc["n_trees"] = m.forest.trees.size();
    doc["total_nodes"] = total_nodes;
    doc["max_depth"] = max_depth;
    doc["features_per_split"] = m.rf_config.features_per_split;
    doc["seed"] = m.rf_config.seed;
  } else {
    Json shape = Json::array();
    shape.push_back(m.feature_width());
    for (const Eigen::MatrixXd& w : m.network.w) shape.push_back(w.rows());
    doc["layer_sizes"] = std::move(shape);
    doc["epochs"] = m.network.epoch_losses.size();
    if (!m.network.epoch_losses.empty()) {
      doc["final_loss"] = m.network.epoch_losses.back();
    }
    doc["optimizer"] = m.mlp_config.optimizer;
    doc["seed"] = m.mlp_config.seed;
  }
  return doc.dump(2) + "\n";
}

}  // namespace ferfreq
