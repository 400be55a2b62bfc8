#include <cmath>
#include <numbers>
#include <random>

#include "cloneval/error.hpp"
#include "cloneval/naive_bayes.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;

TEST_SUITE("naive_bayes") {
  TEST_CASE("priors are class frequencies") {
    TrainingSet ts;
    ts.add("a", FeatureVector{{0.1}}, Label::kTruePositive);
    ts.add("b", FeatureVector{{0.2}}, Label::kTruePositive);
    ts.add("c", FeatureVector{{0.3}}, Label::kTruePositive);
    ts.add("d", FeatureVector{{0.9}}, Label::kFalsePositive);
    const auto m = train_naive_bayes(ts);
    CHECK(m.prior_tp == 0.75);
    CHECK(m.prior_fp == 0.25);
  }

  TEST_CASE("separated classes") {
    TrainingSet ts;
    for (int i = 0; i < 4; ++i) {
      ts.add("t" + std::to_string(i), FeatureVector{{1.0}}, Label::kTruePositive);
      ts.add("f" + std::to_string(i), FeatureVector{{0.0}}, Label::kFalsePositive);
    }
    const auto m = train_naive_bayes(ts);
    CHECK(decide(m.predict(FeatureVector{{1.0}})) == Label::kTruePositive);
    const auto p = m.predict(FeatureVector{{0.0}});
    CHECK(p.probs[1] > 0.99);
    CHECK(p.probs[0] + p.probs[1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("kde density equals a direct sum") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 100; ++i) {
      KernelDensity kde;
      const int m = 1 + static_cast<int>(rng() % 10);
      for (int k = 0; k < m; ++k) kde.samples.push_back(u(rng));
      kde.bandwidth = 0.05 + std::abs(u(rng));
      const double x = u(rng);
      double sum = 0.0;
      for (const double s : kde.samples) {
        const double t = (x - s) / kde.bandwidth;
        sum += std::exp(-0.5 * t * t) / std::sqrt(2 * std::numbers::pi);
      }
      CHECK(kde.density(x) == doctest::Approx(sum / (m * kde.bandwidth)).epsilon(1e-12));
    }
  }

  TEST_CASE("silverman bandwidth") {
    CHECK(silverman_bandwidth({1, 2, 3, 4, 5}) == doctest::Approx(0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2)));
    CHECK(silverman_bandwidth({0.5, 0.5, 0.5}) == 1e-6);
    CHECK(silverman_bandwidth({0.0, 0.0, 0.0, 0.0, 1.0}) == doctest::Approx(0.9 * std::sqrt(0.2) * std::pow(5.0, -0.2)));
    CHECK(silverman_bandwidth({3.0}) == 1e-6);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> s(2 + rng() % 8);
      for (auto& v : s) v = u(rng);
      CHECK(silverman_bandwidth(s) == doctest::Approx(testsupport::reference_silverman(s)).epsilon(1e-12));
    }
  }

  TEST_CASE("posterior matches the direct product") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 100; ++i) {
      const std::size_t dims = 1 + rng() % 4;
      const std::size_t rows = 4 + rng() % 5;
      TrainingSet ts;
      for (std::size_t r = 0; r < rows; ++r) {
        FeatureVector v;
        for (std::size_t d = 0; d < dims; ++d) v.values.push_back(u(rng));
        ts.add(std::to_string(r), v, r % 2 == 0 ? Label::kTruePositive : Label::kFalsePositive);
      }
      const auto m = train_naive_bayes(ts);
      FeatureVector q;
      for (std::size_t d = 0; d < dims; ++d) q.values.push_back(u(rng));
      const double expected = static_cast<double>(testsupport::reference_bayes_posterior(ts, q));
      CHECK(std::abs(m.predict(q).probs[0] - expected) <= 1e-9);
    }
  }

  TEST_CASE("far queries do not underflow") {
    TrainingSet ts;
    ts.add("a", FeatureVector{{0.0, 0.0}}, Label::kTruePositive);
    ts.add("b", FeatureVector{{0.0, 0.0}}, Label::kTruePositive);
    ts.add("c", FeatureVector{{1.0, 1.0}}, Label::kFalsePositive);
    ts.add("d", FeatureVector{{1.0, 1.0}}, Label::kFalsePositive);
    const auto p = train_naive_bayes(ts).predict(FeatureVector{{0.4, 0.45}});
    CHECK(std::isfinite(p.probs[0]));
    CHECK(p.probs[0] == 1.0);
  }

  TEST_CASE("errors") {
    TrainingSet ts;
    ts.add("a", FeatureVector{{0.0}}, Label::kTruePositive);
    CHECK_THROWS_AS(train_naive_bayes(ts), Error);
    ts.add("b", FeatureVector{{1.0}}, Label::kFalsePositive);
    CHECK_THROWS_AS(train_naive_bayes(ts).predict(FeatureVector{{1.0, 2.0}}), Error);
  }
}
