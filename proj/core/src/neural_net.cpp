#include "cloneval/neural_net.hpp"

#include <cfloat>
#include <cmath>

#include "cloneval/error.hpp"
#include "random.hpp"

namespace cloneval {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd activate(const MatrixXd& z, Activation a) {
  if (a == Activation::kRelu) return z.cwiseMax(0.0);
  return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

// Derivative of the activation expressed through its pre-mask output.
MatrixXd activation_slope(const MatrixXd& z, const MatrixXd& a, Activation act) {
  if (act == Activation::kRelu) return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
  return a.array() * (1.0 - a.array());
}

MatrixXd log_softmax_rows(const MatrixXd& z) {
  MatrixXd out(z.rows(), z.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double m = z.row(r).maxCoeff();
    double s = 0.0;
    for (Eigen::Index c = 0; c < z.cols(); ++c) s += std::exp(z(r, c) - m);
    const double lse = m + std::log(s);
    for (Eigen::Index c = 0; c < z.cols(); ++c) out(r, c) = z(r, c) - lse;
  }
  return out;
}

MatrixXd softmax_rows(const MatrixXd& z) {
  MatrixXd out(z.rows(), z.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double m = z.row(r).maxCoeff();
    double s = 0.0;
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      out(r, c) = std::exp(z(r, c) - m);
      s += out(r, c);
    }
    for (Eigen::Index c = 0; c < z.cols(); ++c) out(r, c) = std::max(out(r, c) / s, DBL_MIN);
  }
  return out;
}

MatrixXd affine(const MatrixXd& a, const MatrixXd& w, const VectorXd& b) {
  MatrixXd z = a * w;
  z.rowwise() += b.transpose();
  return z;
}

void check_layers(const std::vector<int>& sizes) {
  if (sizes.size() < 2 || sizes.back() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "layer sizes must be [n, hidden..., 2]");
  }
  for (const int s : sizes) {
    if (s <= 0) throw Error(ErrorCode::kInvalidArgument, "layer sizes must be positive");
  }
}

}  // namespace

std::string_view to_string(Activation a) { return a == Activation::kRelu ? "relu" : "sigmoid"; }

Activation parse_activation(std::string_view name) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "relu") return Activation::kRelu;
  throw Error(ErrorCode::kInvalidArgument, "unknown activation '" + std::string(name) + "'");
}

NeuralNetConfig NeuralNetConfig::deep() {
  NeuralNetConfig cfg;
  cfg.hidden_layers = {32, 32, 32};
  cfg.hidden_activation = Activation::kRelu;
  cfg.dropout_p = 0.5;
  return cfg;
}

NeuralNetModel NeuralNetModel::zeros(std::vector<int> layer_sizes, Activation hidden) {
  check_layers(layer_sizes);
  NeuralNetModel m;
  m.layer_sizes = std::move(layer_sizes);
  m.hidden_activation = hidden;
  for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
    m.weights.push_back(MatrixXd::Zero(m.layer_sizes[l], m.layer_sizes[l + 1]));
    m.biases.push_back(VectorXd::Zero(m.layer_sizes[l + 1]));
  }
  m.scaler = MinMaxScaler::identity(m.input_dims());
  return m;
}

NeuralNetModel NeuralNetModel::random(std::vector<int> layer_sizes, Activation hidden, std::uint64_t seed) {
  NeuralNetModel m = zeros(std::move(layer_sizes), hidden);
  m.seed = seed;
  detail::Rng rng(seed);
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    for (Eigen::Index r = 0; r < m.weights[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < m.weights[l].cols(); ++c) m.weights[l](r, c) = detail::uniform(rng, -0.5, 0.5);
    }
    for (Eigen::Index c = 0; c < m.biases[l].size(); ++c) m.biases[l](c) = detail::uniform(rng, -0.5, 0.5);
  }
  return m;
}

MatrixXd NeuralNetModel::forward(const MatrixXd& inputs) const {
  MatrixXd a = inputs;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    MatrixXd z = affine(a, weights[l], biases[l]);
    a = (l + 1 == weights.size()) ? softmax_rows(z) : activate(z, hidden_activation);
  }
  return a;
}

Prediction NeuralNetModel::predict(const FeatureVector& x) const {
  return predict(std::vector<FeatureVector>{x}).front();
}

std::vector<Prediction> NeuralNetModel::predict(const std::vector<FeatureVector>& xs) const {
  for (const auto& x : xs) {
    if (x.size() != input_dims()) {
      throw Error(ErrorCode::kDimensionMismatch, "model expects " + std::to_string(input_dims()) +
                                                     " features, got " + std::to_string(x.size()));
    }
  }
  const MatrixXd p = forward(scaled_inputs(scaler, xs));
  std::vector<Prediction> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i].probs = {p(i, 0), p(i, 1)};
  return out;
}

bool NeuralNetModel::operator==(const NeuralNetModel& o) const {
  if (layer_sizes != o.layer_sizes || hidden_activation != o.hidden_activation || dropout_p != o.dropout_p ||
      seed != o.seed || epochs_trained != o.epochs_trained || !(scaler == o.scaler)) {
    return false;
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l] != o.weights[l] || biases[l] != o.biases[l]) return false;
  }
  return true;
}

MatrixXd scaled_inputs(const MinMaxScaler& scaler, const std::vector<FeatureVector>& rows) {
  MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(scaler.dims()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t f = 0; f < scaler.dims(); ++f) x(i, f) = scaler.apply(f, rows[i][f]);
  }
  return x;
}

MatrixXd one_hot(const std::vector<Label>& labels) {
  MatrixXd y = MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), 2);
  for (std::size_t i = 0; i < labels.size(); ++i) y(i, labels[i] == Label::kTruePositive ? 0 : 1) = 1.0;
  return y;
}

Gradients loss_and_gradients(const NeuralNetModel& model, const MatrixXd& x, const MatrixXd& y,
                             const std::vector<MatrixXd>* masks) {
  const std::size_t layers = model.weights.size();
  const double m = static_cast<double>(x.rows());
  std::vector<MatrixXd> inputs(layers);   // activation fed into layer l
  std::vector<MatrixXd> pre(layers);      // z of layer l
  std::vector<MatrixXd> post(layers);     // activation of layer l before the mask

  MatrixXd a = x;
  for (std::size_t l = 0; l < layers; ++l) {
    inputs[l] = a;
    pre[l] = affine(a, model.weights[l], model.biases[l]);
    if (l + 1 < layers) {
      post[l] = activate(pre[l], model.hidden_activation);
      a = masks != nullptr ? MatrixXd(post[l].cwiseProduct((*masks)[l])) : post[l];
    }
  }

  Gradients g;
  const MatrixXd logp = log_softmax_rows(pre.back());
  g.loss = -(y.cwiseProduct(logp)).sum() / m;
  g.weights.resize(layers);
  g.biases.resize(layers);

  MatrixXd dz = (logp.array().exp().matrix() - y) / m;
  for (std::size_t l = layers; l-- > 0;) {
    g.weights[l] = inputs[l].transpose() * dz;
    g.biases[l] = dz.colwise().sum().transpose();
    if (l == 0) break;
    MatrixXd da = dz * model.weights[l].transpose();
    if (masks != nullptr) da = da.cwiseProduct((*masks)[l - 1]);
    dz = da.cwiseProduct(activation_slope(pre[l - 1], post[l - 1], model.hidden_activation));
  }
  return g;
}

NeuralNetModel train_neural_net(const TrainingSet& ts, const NeuralNetConfig& cfg, const EpochObserver& observer,
                                const NeuralNetModel* initial) {
  ts.validate();
  if (!ts.has_both_classes()) {
    throw Error(ErrorCode::kSingleClassTrainingSet, "training set must contain TP and FP rows");
  }
  if (cfg.max_epochs < 1) throw Error(ErrorCode::kInvalidArgument, "max_epochs must be >= 1");
  if (cfg.dropout_p < 0.0 || cfg.dropout_p >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "dropout_p must lie in [0, 1)");
  }

  std::vector<int> sizes{static_cast<int>(ts.dims())};
  sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
  sizes.push_back(2);

  NeuralNetModel model;
  if (cfg.warm_start && initial != nullptr && initial->layer_sizes == sizes) {
    model = *initial;
    model.epochs_trained = 0;
  } else {
    model = NeuralNetModel::random(sizes, cfg.hidden_activation, cfg.seed);
    model.scaler = MinMaxScaler::fit(ts.x);
  }
  model.seed = cfg.seed;
  model.dropout_p = cfg.dropout_p;

  const MatrixXd x = scaled_inputs(model.scaler, ts.x);
  const MatrixXd y = one_hot(ts.y);
  // Dropout draws come from a separate stream.
  detail::Rng mask_rng(detail::splitmix64(cfg.seed));
  const double keep_scale = 1.0 / (1.0 - cfg.dropout_p);

  double previous_loss = INFINITY;
  std::vector<MatrixXd> masks(model.weights.size() - 1);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const std::vector<MatrixXd>* active_masks = nullptr;
    if (cfg.dropout_p > 0.0) {
      for (std::size_t l = 0; l < masks.size(); ++l) {
        masks[l].resize(x.rows(), model.layer_sizes[l + 1]);
        for (Eigen::Index r = 0; r < masks[l].rows(); ++r) {
          for (Eigen::Index c = 0; c < masks[l].cols(); ++c) {
            masks[l](r, c) = detail::uniform01(mask_rng) < cfg.dropout_p ? 0.0 : keep_scale;
          }
        }
      }
      active_masks = &masks;
    }
    const Gradients g = loss_and_gradients(model, x, y, active_masks);
    if (!std::isfinite(g.loss)) {
      throw Error(ErrorCode::kDivergedLoss, "loss became non-finite at epoch " + std::to_string(epoch));
    }
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      model.weights[l] -= cfg.learning_rate * g.weights[l];
      model.biases[l] -= cfg.learning_rate * g.biases[l];
    }
    model.epochs_trained = epoch;
    if (observer) observer(epoch, model);
    if (cfg.dropout_p == 0.0 && std::abs(previous_loss - g.loss) < cfg.convergence_tol) break;
    previous_loss = g.loss;
  }
  return model;
}

}  // namespace cloneval
