#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cloneval/dataset.hpp"
#include "cloneval/prediction.hpp"
#include "cloneval/scaling.hpp"

namespace cloneval {

enum class Activation { kSigmoid, kRelu };

std::string_view to_string(Activation a);
// Throws Error(kInvalidArgument) for an unknown name.
Activation parse_activation(std::string_view name);

struct NeuralNetConfig {
  std::vector<int> hidden_layers{107};
  Activation hidden_activation = Activation::kSigmoid;
  double dropout_p = 0.0;
  double learning_rate = 0.05;
  int max_epochs = 1000;
  std::uint64_t seed = 42;
  // Training stops once an epoch changes the loss by less than this. Only
  // checked without dropout, where the loss is deterministic per step.
  double convergence_tol = 1e-7;
  // Continue from the given model's weights instead of a fresh init.
  bool warm_start = false;

  // Three ReLU layers of 32 with dropout 0.5.
  static NeuralNetConfig deep();
};

// Fully connected network, layer_sizes = [n, hidden..., 2]. weights[l] is
// (layer_sizes[l] x layer_sizes[l+1]) so that z = a * W + b for a row a.
// Output 0 is the true-clone class.
struct NeuralNetModel {
  std::vector<int> layer_sizes;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Activation hidden_activation = Activation::kSigmoid;
  double dropout_p = 0.0;
  std::uint64_t seed = 0;
  int epochs_trained = 0;
  MinMaxScaler scaler;

  // All weights and biases zero, identity scaling.
  static NeuralNetModel zeros(std::vector<int> layer_sizes, Activation hidden = Activation::kSigmoid);
  // Uniform [-0.5, 0.5] weights and biases from `seed`.
  static NeuralNetModel random(std::vector<int> layer_sizes, Activation hidden, std::uint64_t seed);

  std::size_t input_dims() const { return static_cast<std::size_t>(layer_sizes.front()); }

  // Throws Error(kDimensionMismatch).
  Prediction predict(const FeatureVector& x) const;
  std::vector<Prediction> predict(const std::vector<FeatureVector>& xs) const;

  // Softmax outputs for already-scaled input rows (one row per sample).
  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs) const;

  bool operator==(const NeuralNetModel& other) const;
};

struct Gradients {
  double loss = 0.0;  // mean cross-entropy
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// Loss and its exact gradient for scaled inputs `x` (m x n) and one-hot
// targets `y` (m x 2). `masks`, when given, holds one (m x width) dropout
// multiplier matrix per hidden layer.
Gradients loss_and_gradients(const NeuralNetModel& model, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                             const std::vector<Eigen::MatrixXd>* masks = nullptr);

// Called after every epoch with the epoch number (1-based) and current model.
using EpochObserver = std::function<void(int epoch, const NeuralNetModel& model)>;

// Full-batch gradient descent on mean cross-entropy. Throws
// Error(kSingleClassTrainingSet) and Error(kDivergedLoss).
NeuralNetModel train_neural_net(const TrainingSet& ts, const NeuralNetConfig& cfg,
                                const EpochObserver& observer = {}, const NeuralNetModel* initial = nullptr);

// Helpers shared with the trainer and tests.
Eigen::MatrixXd scaled_inputs(const MinMaxScaler& scaler, const std::vector<FeatureVector>& rows);
Eigen::MatrixXd one_hot(const std::vector<Label>& labels);

}  // namespace cloneval
