#include "cloneval/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cloneval/csv.hpp"
#include "cloneval/error.hpp"

namespace cloneval {
namespace {

std::size_t bin_of(double v, double lo, double hi) {
  if (!(hi > lo)) return 0;
  const double t = (v - lo) / (hi - lo);
  const auto b = static_cast<std::size_t>(std::floor(t * static_cast<double>(kHistogramBins)));
  return std::min(b, kHistogramBins - 1);
}

}  // namespace

DistributionReport feature_distribution_report(const TrainingSet& dataset) {
  dataset.validate();
  const std::size_t n_tp = dataset.count(Label::kTruePositive);
  const std::size_t n_fp = dataset.count(Label::kFalsePositive);
  if (n_tp == 0 || n_fp == 0) {
    throw Error(ErrorCode::kInsufficientClasses, "distribution report needs both TP and FP rows");
  }
  const std::size_t dims = dataset.dims();
  const auto names = feature_names(dims);

  DistributionReport report;
  for (std::size_t f = 0; f < dims; ++f) {
    FeatureDistribution d;
    d.name = names[f];
    double lo = dataset.x.front()[f], hi = lo;
    for (const auto& row : dataset.x) {
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    d.edges.resize(kHistogramBins + 1);
    for (std::size_t b = 0; b <= kHistogramBins; ++b) {
      d.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(kHistogramBins);
    }
    d.edges.back() = hi;
    d.hist_tp.assign(kHistogramBins, 0.0);
    d.hist_fp.assign(kHistogramBins, 0.0);
    double sum_tp = 0.0, sum_fp = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const double v = dataset.x[i][f];
      if (dataset.y[i] == Label::kTruePositive) {
        d.hist_tp[bin_of(v, lo, hi)] += 1.0;
        sum_tp += v;
      } else {
        d.hist_fp[bin_of(v, lo, hi)] += 1.0;
        sum_fp += v;
      }
    }
    for (auto& c : d.hist_tp) c /= static_cast<double>(n_tp);
    for (auto& c : d.hist_fp) c /= static_cast<double>(n_fp);
    d.mean_tp = sum_tp / static_cast<double>(n_tp);
    d.mean_fp = sum_fp / static_cast<double>(n_fp);
    d.delta_mu = std::abs(d.mean_tp - d.mean_fp);
    report.features.push_back(std::move(d));
  }
  report.ranking.resize(dims);
  std::iota(report.ranking.begin(), report.ranking.end(), 0);
  std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
    return report.features[a].delta_mu > report.features[b].delta_mu;
  });
  return report;
}

void write_distribution_summary_csv(std::ostream& out, const DistributionReport& report) {
  csv::write_row(out, {"feature", "mean_tp", "mean_fp", "delta_mu", "rank"});
  for (std::size_t r = 0; r < report.ranking.size(); ++r) {
    const auto& d = report.features[report.ranking[r]];
    csv::write_row(out, {d.name, csv::format_fixed6(d.mean_tp), csv::format_fixed6(d.mean_fp),
                         csv::format_fixed6(d.delta_mu), std::to_string(r + 1)});
  }
}

void write_distribution_histogram_csv(std::ostream& out, const DistributionReport& report) {
  csv::write_row(out, {"feature", "bin", "lo", "hi", "tp", "fp"});
  for (const auto& d : report.features) {
    for (std::size_t b = 0; b < kHistogramBins; ++b) {
      csv::write_row(out, {d.name, std::to_string(b), csv::format_fixed6(d.edges[b]),
                           csv::format_fixed6(d.edges[b + 1]), csv::format_fixed6(d.hist_tp[b]),
                           csv::format_fixed6(d.hist_fp[b])});
    }
  }
}

}  // namespace cloneval
