#include <random>

#include "cloneval/error.hpp"
#include "cloneval/neural_net.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;

namespace {

TrainingSet xor_set() {
  TrainingSet ts;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      FeatureVector v{std::vector<double>(8, 0.0)};
      v.values[0] = a;
      v.values[1] = b;
      ts.add("r" + std::to_string(a * 2 + b), v, a != b ? Label::kTruePositive : Label::kFalsePositive);
    }
  }
  return ts;
}

TrainingSet random_set(std::mt19937_64& rng, std::size_t rows, std::size_t dims) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TrainingSet ts;
  for (std::size_t i = 0; i < rows; ++i) {
    FeatureVector v;
    for (std::size_t k = 0; k < dims; ++k) v.values.push_back(u(rng));
    ts.add(std::to_string(i), v, v.values[0] > 0.5 ? Label::kTruePositive : Label::kFalsePositive);
  }
  return ts;
}

}  // namespace

TEST_SUITE("neural_net") {
  TEST_CASE("backprop matches central differences") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 50; ++i) CHECK(testsupport::gradient_check(rng) < 1e-4);
  }

  TEST_CASE("all-ones dropout masks leave the gradient unchanged") {
    auto model = NeuralNetModel::random({3, 4, 5, 2}, Activation::kRelu, 9);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::MatrixXd x(5, 3), y = Eigen::MatrixXd::Zero(5, 2);
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 3; ++c) x(r, c) = u(rng);
      y(r, r % 2) = 1;
    }
    std::vector<Eigen::MatrixXd> masks{Eigen::MatrixXd::Ones(5, 4), Eigen::MatrixXd::Ones(5, 5)};
    const auto plain = loss_and_gradients(model, x, y);
    const auto masked = loss_and_gradients(model, x, y, &masks);
    CHECK(plain.loss == masked.loss);
    for (std::size_t l = 0; l < plain.weights.size(); ++l) {
      CHECK(plain.weights[l] == masked.weights[l]);
      CHECK(plain.biases[l] == masked.biases[l]);
    }
  }

  TEST_CASE("zero network is indifferent") {
    const auto model = NeuralNetModel::zeros({8, 107, 2});
    const auto p = model.predict(FeatureVector{{0.3, 1, 0, 0.2, 0.9, 1, 4, 2}});
    CHECK(p.probs[0] == 0.5);
    CHECK(p.probs[1] == 0.5);
  }

  TEST_CASE("softmax stays normalized for large inputs") {
    const auto model = NeuralNetModel::random({4, 6, 2}, Activation::kRelu, 3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    Eigen::MatrixXd x(200, 4);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = u(rng);
    }
    const auto out = model.forward(x);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      CHECK(out(r, 0) > 0.0);
      CHECK(out(r, 1) > 0.0);
      CHECK(std::abs(out(r, 0) + out(r, 1) - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("learns xor") {
    NeuralNetConfig cfg;
    cfg.hidden_layers = {8};
    cfg.learning_rate = 2.0;
    cfg.max_epochs = 1000;
    cfg.convergence_tol = 0.0;
    const auto ts = xor_set();
    const auto model = train_neural_net(ts, cfg);
    CHECK(model.epochs_trained <= 1000);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(decide(model.predict(ts.x[i])) == ts.y[i]);
  }

  TEST_CASE("one gradient step from the seeded initialization") {
    std::mt19937_64 rng(12);
    const auto ts = random_set(rng, 20, 3);
    NeuralNetConfig cfg;
    cfg.hidden_layers = {5};
    cfg.max_epochs = 1;
    cfg.seed = 77;
    const auto trained = train_neural_net(ts, cfg);
    auto start = NeuralNetModel::random({3, 5, 2}, cfg.hidden_activation, cfg.seed);
    start.scaler = MinMaxScaler::fit(ts.x);
    const auto g = loss_and_gradients(start, scaled_inputs(start.scaler, ts.x), one_hot(ts.y));
    for (std::size_t l = 0; l < 2; ++l) {
      CHECK(((start.weights[l] - cfg.learning_rate * g.weights[l]) - trained.weights[l]).cwiseAbs().maxCoeff() == 0.0);
      CHECK(((start.biases[l] - cfg.learning_rate * g.biases[l]) - trained.biases[l]).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("deterministic for a fixed seed") {
    std::mt19937_64 rng(13);
    const auto ts = random_set(rng, 40, 8);
    NeuralNetConfig cfg;
    cfg.max_epochs = 50;
    const auto a = train_neural_net(ts, cfg);
    const auto b = train_neural_net(ts, cfg);
    CHECK(a == b);
    auto deep = NeuralNetConfig::deep();
    deep.max_epochs = 30;
    CHECK(train_neural_net(ts, deep) == train_neural_net(ts, deep));
    cfg.seed = 43;
    CHECK_FALSE(train_neural_net(ts, cfg) == a);
  }

  TEST_CASE("inference ignores dropout") {
    std::mt19937_64 rng(14);
    const auto ts = random_set(rng, 30, 4);
    auto cfg = NeuralNetConfig::deep();
    cfg.max_epochs = 20;
    const auto model = train_neural_net(ts, cfg);
    CHECK(model.dropout_p == 0.5);
    CHECK(model.predict(ts.x[0]) == model.predict(ts.x[0]));
  }

  TEST_CASE("observer sees every epoch") {
    std::mt19937_64 rng(15);
    const auto ts = random_set(rng, 20, 2);
    NeuralNetConfig cfg;
    cfg.max_epochs = 25;
    cfg.convergence_tol = -1.0;
    int calls = 0;
    const auto model = train_neural_net(ts, cfg, [&](int epoch, const NeuralNetModel&) { CHECK(epoch == ++calls); });
    CHECK(calls == 25);
    CHECK(model.epochs_trained == 25);
  }

  TEST_CASE("contract errors") {
    TrainingSet one;
    one.add("a", FeatureVector{{1.0}}, Label::kTruePositive);
    CHECK_THROWS_AS(train_neural_net(one, {}), Error);
    try {
      train_neural_net(one, {});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSingleClassTrainingSet);
    }
    const auto model = NeuralNetModel::zeros({3, 2, 2});
    CHECK_THROWS_AS(model.predict(FeatureVector{{1.0}}), Error);
  }

  TEST_CASE("huge learning rate diverges") {
    std::mt19937_64 rng(16);
    const auto ts = random_set(rng, 20, 3);
    NeuralNetConfig cfg;
    cfg.learning_rate = 1e308;
    cfg.max_epochs = 50;
    cfg.convergence_tol = -1.0;
    try {
      train_neural_net(ts, cfg);
      FAIL("expected divergence");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDivergedLoss);
    }
  }

  TEST_CASE("activation names") {
    CHECK(parse_activation("relu") == Activation::kRelu);
    CHECK(to_string(Activation::kSigmoid) == "sigmoid");
    CHECK_THROWS_AS(parse_activation("tanh"), Error);
  }
}
