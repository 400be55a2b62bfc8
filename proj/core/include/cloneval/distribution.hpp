#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cloneval/dataset.hpp"

namespace cloneval {

inline constexpr std::size_t kHistogramBins = 20;

struct FeatureDistribution {
  std::string name;
  // kHistogramBins + 1 equal-width edges over the observed range of the
  // feature across both classes.
  std::vector<double> edges;
  // Per-class bin frequencies; each sums to 1.
  std::vector<double> hist_tp;
  std::vector<double> hist_fp;
  double mean_tp = 0.0;
  double mean_fp = 0.0;
  double delta_mu = 0.0;  // |mean_tp - mean_fp|
};

struct DistributionReport {
  std::vector<FeatureDistribution> features;
  // Feature indices sorted by delta_mu, largest first (stable on ties).
  std::vector<std::size_t> ranking;
};

// Throws Error(kInsufficientClasses) unless both labels occur.
DistributionReport feature_distribution_report(const TrainingSet& dataset);

// One row per feature: name, mean_tp, mean_fp, delta_mu, rank.
void write_distribution_summary_csv(std::ostream& out, const DistributionReport& report);
// One row per (feature, bin): name, bin, lo, hi, tp, fp.
void write_distribution_histogram_csv(std::ostream& out, const DistributionReport& report);

}  // namespace cloneval
