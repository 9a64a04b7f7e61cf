#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ferfreq/feature_table.hpp"

namespace ferfreq {

struct MLPConfig {
  std::vector<int> hidden = {64, 32};
  int epochs = 75;
  int batch_size = 256;
  double learning_rate = 1e-3;
  std::string optimizer = "adam";  // or "sgd"
  std::uint64_t seed = 0;
};

// Fully connected rectifier network with a softmax head. w[l] maps layer l
// activations (columns = samples) to layer l+1 pre-activations.
struct Mlp {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
  std::vector<std::uint8_t> classes;  // sorted distinct training labels
  std::vector<double> epoch_losses;
};

// Mean cross-entropy of a batch; x is p x n, y holds class column indices.
double mlp_batch_loss(const Mlp& net, const Eigen::MatrixXd& x, const std::vector<int>& y);

// Analytic gradients of mlp_batch_loss; returns the loss. Shapes of dw/db
// mirror net.w/net.b.
double mlp_batch_gradients(const Mlp& net, const Eigen::MatrixXd& x, const std::vector<int>& y,
                           std::vector<Eigen::MatrixXd>& dw, std::vector<Eigen::VectorXd>& db);

// Class probabilities, n x n_classes, columns following net.classes.
Eigen::MatrixXd mlp_probabilities(const Mlp& net, const Eigen::MatrixXd& x);

// Trains on already-standardized features by mini-batch Adam (or plain SGD)
// over a seed-fixed shuffle schedule. The output layer width equals the
// number of distinct training labels. Throws TrainingError when the loss
// stops being finite, reporting epoch and learning rate.
Mlp train_network(const FeatureTable& train, const MLPConfig& cfg);

}  // namespace ferfreq
