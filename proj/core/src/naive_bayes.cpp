#include "cloneval/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cloneval/error.hpp"

namespace cloneval {
namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double KernelDensity::log_density(double x) const {
  // log((1/(m h)) * sum_i phi((x - x_i) / h)) via log-sum-exp.
  double max_term = -INFINITY;
  std::vector<double> terms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = (x - samples[i]) / bandwidth;
    terms[i] = -0.5 * u * u;
    max_term = std::max(max_term, terms[i]);
  }
  double s = 0.0;
  for (const double t : terms) s += std::exp(t - max_term);
  const double m = static_cast<double>(samples.size());
  return max_term + std::log(s) - std::log(m * bandwidth) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double KernelDensity::density(double x) const { return std::exp(log_density(x)); }

double silverman_bandwidth(const std::vector<double>& samples, double floor) {
  const std::size_t m = samples.size();
  if (m < 2) return floor;
  double mean = 0.0;
  for (const double v : samples) mean += v;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (const double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  const double h = 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
  return std::max(h, floor);
}

Prediction NaiveBayesModel::predict(const FeatureVector& x) const {
  if (x.size() != input_dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "model expects " + std::to_string(input_dims()) +
                                                   " features, got " + std::to_string(x.size()));
  }
  double log_tp = std::log(prior_tp);
  double log_fp = std::log(prior_fp);
  for (std::size_t f = 0; f < x.size(); ++f) {
    log_tp += tp[f].log_density(x[f]);
    log_fp += fp[f].log_density(x[f]);
  }
  const double m = std::max(log_tp, log_fp);
  const double e_tp = std::exp(log_tp - m);
  const double e_fp = std::exp(log_fp - m);
  Prediction p;
  p.probs = {e_tp / (e_tp + e_fp), e_fp / (e_tp + e_fp)};
  return p;
}

NaiveBayesModel train_naive_bayes(const TrainingSet& ts, const NaiveBayesConfig& cfg) {
  ts.validate();
  if (!ts.has_both_classes()) {
    throw Error(ErrorCode::kSingleClassTrainingSet, "training set must contain TP and FP rows");
  }
  NaiveBayesModel model;
  const double n = static_cast<double>(ts.size());
  model.prior_tp = static_cast<double>(ts.count(Label::kTruePositive)) / n;
  model.prior_fp = static_cast<double>(ts.count(Label::kFalsePositive)) / n;
  for (std::size_t f = 0; f < ts.dims(); ++f) {
    KernelDensity tp, fp;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      (ts.y[i] == Label::kTruePositive ? tp : fp).samples.push_back(ts.x[i][f]);
    }
    tp.bandwidth = silverman_bandwidth(tp.samples, cfg.bandwidth_floor);
    fp.bandwidth = silverman_bandwidth(fp.samples, cfg.bandwidth_floor);
    model.tp.push_back(std::move(tp));
    model.fp.push_back(std::move(fp));
  }
  return model;
}

}  // namespace cloneval
