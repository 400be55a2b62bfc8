#pragma once

#include <vector>

#include "cloneval/dataset.hpp"
#include "cloneval/prediction.hpp"

namespace cloneval {

// Gaussian kernel density estimate over stored samples.
struct KernelDensity {
  std::vector<double> samples;
  double bandwidth = 1.0;

  double density(double x) const;
  double log_density(double x) const;

  bool operator==(const KernelDensity&) const = default;
};

struct NaiveBayesConfig {
  double bandwidth_floor = 1e-6;
};

// Silverman's rule: 0.9 * min(sd, IQR / 1.34) * m^(-1/5), using sd alone when
// the IQR is zero, never below `floor`. sd is the sample standard deviation
// and quartiles use linear interpolation between order statistics.
double silverman_bandwidth(const std::vector<double>& samples, double floor = 1e-6);

// Gaussian naive Bayes with a KDE likelihood per feature and class.
struct NaiveBayesModel {
  double prior_tp = 0.5;
  double prior_fp = 0.5;
  std::vector<KernelDensity> tp;  // one per feature
  std::vector<KernelDensity> fp;

  std::size_t input_dims() const { return tp.size(); }

  // Throws Error(kDimensionMismatch).
  Prediction predict(const FeatureVector& x) const;

  bool operator==(const NaiveBayesModel&) const = default;
};

// Throws Error(kSingleClassTrainingSet).
NaiveBayesModel train_naive_bayes(const TrainingSet& ts, const NaiveBayesConfig& cfg = {});

}  // namespace cloneval
