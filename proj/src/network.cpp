#include "ferfreq/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "ferfreq/error.hpp"
#include "ferfreq/rng.hpp"

namespace ferfreq {
namespace {

// z[l] for l in [0, L); a[l] = input of layer l. ReLU derivative at 0 is 0.
struct Forward {
  std::vector<Eigen::MatrixXd> z;
  std::vector<Eigen::MatrixXd> a;
};

Forward forward_pass(const Mlp& net, const Eigen::MatrixXd& x) {
  Forward f;
  const std::size_t layers = net.w.size();
  f.z.resize(layers);
  f.a.resize(layers + 1);
  f.a[0] = x;
  for (std::size_t l = 0; l < layers; ++l) {
    f.z[l] = (net.w[l] * f.a[l]).colwise() + net.b[l];
    if (l + 1 < layers) {
      f.a[l + 1] = f.z[l].cwiseMax(0.0);
    } else {
      f.a[l + 1] = f.z[l];
    }
  }
  return f;
}

// Column-wise softmax with the max subtracted; also returns the mean
// cross-entropy against y via logsumexp.
double softmax_and_loss(const Eigen::MatrixXd& logits, const std::vector<int>& y,
                        Eigen::MatrixXd& probs) {
  const Eigen::Index n = logits.cols();
  probs.resize(logits.rows(), n);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double zmax = logits.col(i).maxCoeff();
    const Eigen::VectorXd e = (logits.col(i).array() - zmax).exp();
    const double sum = e.sum();
    probs.col(i) = e / sum;
    loss += std::log(sum) + zmax - logits(y[static_cast<std::size_t>(i)], i);
  }
  return loss / static_cast<double>(n);
}

void check_batch(const Mlp& net, const Eigen::MatrixXd& x, const std::vector<int>& y) {
  if (net.w.empty()) throw ParameterError("uninitialized network");
  if (x.rows() != net.w.front().cols()) throw ParameterError("feature width does not match network");
  if (static_cast<std::size_t>(x.cols()) != y.size()) throw ParameterError("batch size mismatch");
  const int nc = static_cast<int>(net.w.back().rows());
  for (int cls : y) {
    if (cls < 0 || cls >= nc) throw ParameterError("class index out of range");
  }
}

}  // namespace

double mlp_batch_loss(const Mlp& net, const Eigen::MatrixXd& x, const std::vector<int>& y) {
  check_batch(net, x, y);
  const Forward f = forward_pass(net, x);
  Eigen::MatrixXd probs;
  return softmax_and_loss(f.a.back(), y, probs);
}

double mlp_batch_gradients(const Mlp& net, const Eigen::MatrixXd& x, const std::vector<int>& y,
                           std::vector<Eigen::MatrixXd>& dw, std::vector<Eigen::VectorXd>& db) {
  check_batch(net, x, y);
  const std::size_t layers = net.w.size();
  const Forward f = forward_pass(net, x);

  Eigen::MatrixXd probs;
  const double loss = softmax_and_loss(f.a.back(), y, probs);

  const double inv_n = 1.0 / static_cast<double>(x.cols());
  Eigen::MatrixXd delta = probs;
  for (Eigen::Index i = 0; i < x.cols(); ++i) delta(y[static_cast<std::size_t>(i)], i) -= 1.0;
  delta *= inv_n;

  dw.resize(layers);
  db.resize(layers);
  for (std::size_t l = layers; l-- > 0;) {
    dw[l] = delta * f.a[l].transpose();
    db[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = (net.w[l].transpose() * delta).cwiseProduct(
          (f.z[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

Eigen::MatrixXd mlp_probabilities(const Mlp& net, const Eigen::MatrixXd& x) {
  if (net.w.empty()) throw ParameterError("uninitialized network");
  if (x.rows() != net.w.front().cols()) throw ParameterError("feature width does not match network");
  const Forward f = forward_pass(net, x);
  const Eigen::MatrixXd& logits = f.a.back();
  Eigen::MatrixXd probs(x.cols(), logits.rows());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double zmax = logits.col(i).maxCoeff();
    const Eigen::VectorXd e = (logits.col(i).array() - zmax).exp();
    probs.row(i) = e.transpose() / e.sum();
  }
  return probs;
}

Mlp train_network(const FeatureTable& train, const MLPConfig& cfg) {
  if (train.n_rows() == 0) throw ParameterError("empty training table");
  if (cfg.epochs < 1) throw ParameterError("epochs must be at least 1");
  if (cfg.batch_size < 1) throw ParameterError("batch_size must be at least 1");
  if (cfg.learning_rate < 0.0) throw ParameterError("learning_rate must be nonnegative");
  if (cfg.optimizer != "adam" && cfg.optimizer != "sgd") {
    throw ParameterError("unknown optimizer: " + cfg.optimizer);
  }
  for (int h : cfg.hidden) {
    if (h < 1) throw ParameterError("hidden layer sizes must be positive");
  }

  const std::set<std::uint8_t> label_set(train.labels.begin(), train.labels.end());
  if (label_set.size() < 2) throw TrainingError("training table has a single label");

  Mlp net;
  net.classes.assign(label_set.begin(), label_set.end());
  std::array<int, 6> class_col{};
  class_col.fill(-1);
  for (std::size_t c = 0; c < net.classes.size(); ++c) {
    class_col[net.classes[c]] = static_cast<int>(c);
  }

  std::vector<int> sizes;
  sizes.push_back(train.p);
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(static_cast<int>(net.classes.size()));

  Rng init_rng(derive_seed(cfg.seed, 0));
  const std::size_t layers = sizes.size() - 1;
  net.w.resize(layers);
  net.b.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    // He scaling in front of rectifiers, Xavier-like on the softmax layer.
    const double scale =
        l + 1 < layers ? std::sqrt(2.0 / fan_in) : std::sqrt(1.0 / fan_in);
    net.w[l].resize(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) net.w[l](r, c) = scale * init_rng.gaussian();
    }
    net.b[l] = Eigen::VectorXd::Zero(fan_out);
  }

  const std::size_t n = train.n_rows();
  const std::size_t p = static_cast<std::size_t>(train.p);
  Eigen::MatrixXd x(p, n);
  std::vector<int> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < p; ++k) x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r)) = train.features[r * p + k];
    y[r] = class_col[train.labels[r]];
  }

  const bool adam = cfg.optimizer == "adam";
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  std::vector<Eigen::MatrixXd> mw(layers), vw(layers), dw;
  std::vector<Eigen::VectorXd> mb(layers), vb(layers), db;
  for (std::size_t l = 0; l < layers; ++l) {
    mw[l] = Eigen::MatrixXd::Zero(net.w[l].rows(), net.w[l].cols());
    vw[l] = mw[l];
    mb[l] = Eigen::VectorXd::Zero(net.b[l].size());
    vb[l] = mb[l];
  }

  Rng shuffle_rng(derive_seed(cfg.seed, 1));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
  Eigen::MatrixXd xb;
  std::vector<int> yb;
  long step = 0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(perm);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += bs) {
      const std::size_t count = std::min(bs, n - start);
      xb.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(count));
      yb.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        xb.col(static_cast<Eigen::Index>(i)) = x.col(static_cast<Eigen::Index>(perm[start + i]));
        yb[i] = y[perm[start + i]];
      }

      const double loss = mlp_batch_gradients(net, xb, yb, dw, db);
      if (!std::isfinite(loss)) {
        throw TrainingError("training diverged at epoch " + std::to_string(epoch) +
                            " (learning rate " + std::to_string(cfg.learning_rate) + ")");
      }
      epoch_loss += loss * static_cast<double>(count);

      ++step;
      for (std::size_t l = 0; l < layers; ++l) {
        if (adam) {
          mw[l] = kBeta1 * mw[l] + (1.0 - kBeta1) * dw[l];
          vw[l] = kBeta2 * vw[l] + (1.0 - kBeta2) * dw[l].cwiseProduct(dw[l]);
          mb[l] = kBeta1 * mb[l] + (1.0 - kBeta1) * db[l];
          vb[l] = kBeta2 * vb[l] + (1.0 - kBeta2) * db[l].cwiseProduct(db[l]);
          const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
          const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
          net.w[l] -= (cfg.learning_rate * (mw[l] / c1).array() /
                       ((vw[l] / c2).array().sqrt() + kEps))
                          .matrix();
          net.b[l] -= (cfg.learning_rate * (mb[l] / c1).array() /
                       ((vb[l] / c2).array().sqrt() + kEps))
                          .matrix();
        } else {
          net.w[l] -= cfg.learning_rate * dw[l];
          net.b[l] -= cfg.learning_rate * db[l];
        }
      }
    }
    net.epoch_losses.push_back(epoch_loss / static_cast<double>(n));
  }
  return net;
}

}  // namespace ferfreq
