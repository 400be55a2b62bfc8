#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cloneval/dataset.hpp"
#include "cloneval/model.hpp"
#include "cloneval/prediction.hpp"

namespace cloneval {

struct MetricsReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double gamma = 0.5;
  // Set when the matching ratio had a zero denominator and was reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  bool fp_rate_undefined = false;

  std::size_t total() const { return tp + fp + tn + fn; }
};

// Throws Error(kLengthMismatch) and Error(kInvalidArgument) on an unlabeled
// entry.
MetricsReport compute_metrics(const std::vector<Prediction>& predictions, const std::vector<Label>& labels,
                              double gamma = 0.5);

enum class CurveKind { kRoc, kPr };

struct CurvePoint {
  double threshold = 0.0;
  double x = 0.0;  // fp_rate (ROC) or recall (PR)
  double y = 0.0;  // tp_rate (ROC) or precision (PR)
};

struct CurveReport {
  CurveKind kind = CurveKind::kRoc;
  // One point per threshold, thresholds descending. The first threshold lies
  // above every score so the curve starts with nothing predicted positive.
  std::vector<CurvePoint> points;
  double auc = 0.0;
};

// Sweeps the distinct scores plus {0, 1}; trapezoidal area. Throws
// Error(kSingleClassLabels).
CurveReport curve_and_auc(const std::vector<Prediction>& predictions, const std::vector<Label>& labels,
                          CurveKind kind);

// Youden-optimal threshold from a ROC sweep. Every gamma in
// (next lower threshold, threshold] gives the same decisions, so the optimum
// is a union of intervals; 0.5 is returned when it lies in one, otherwise the
// midpoint of the optimal interval nearest to 0.5.
double recommend_gamma(const CurveReport& roc);

// Stratified, seeded partition into k folds whose sizes differ by at most 1.
// Throws Error(kInsufficientData) when k < 2 or k > labels.size().
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<Label>& labels, int k, std::uint64_t seed);

struct CvConfig {
  int k = 10;
  std::uint64_t seed = 42;
  double gamma = 0.5;
  unsigned threads = 0;  // 0: one per hardware thread, 1: sequential
  // Record held-out accuracy after every epoch (neural nets only).
  bool record_epoch_trace = false;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over folds
};

struct CvReport {
  int k = 0;
  std::uint64_t seed = 0;
  double gamma = 0.5;
  std::vector<std::vector<std::size_t>> folds;
  std::vector<MetricsReport> fold_metrics;
  MetricSummary accuracy, precision, recall, f1;
  // Held-out prediction for every row, indexed like the dataset.
  std::vector<Prediction> predictions;
  // Mean held-out accuracy after each epoch; folds that stopped early carry
  // their last value forward.
  std::vector<double> epoch_accuracy;
  std::vector<std::string> warnings;
};

// Seeded k-fold cross-validation; fold i trains with seed + i. Throws
// Error(kInsufficientData) and Error(kSingleClassTrainingSet).
CvReport k_fold_cross_validate(const TrainingSet& ts, const TrainerConfig& trainer, const CvConfig& cfg = {});

// Chi-squared statistic of each feature against the class, with the feature
// cut into `bins` equal-width bins over its range. Empty bins carry no
// observations and are merged into a neighbour, which leaves the statistic
// unchanged. Throws Error(kSingleClassLabels).
std::vector<double> chi_squared_statistics(const TrainingSet& ts, int bins = 10);
// The same divided by the largest statistic (all zero when that is zero).
std::vector<double> chi_squared_feature_scores(const TrainingSet& ts, int bins = 10);

// Report writers. All real numbers are printed with 6 decimals.
void write_metrics_text(std::ostream& out, const MetricsReport& m);
void write_cv_text(std::ostream& out, const CvReport& cv);
void write_cv_csv(std::ostream& out, const CvReport& cv);
void write_curve_csv(std::ostream& out, const CurveReport& curve);
void write_epoch_trace_csv(std::ostream& out, const std::vector<double>& epoch_accuracy);
void write_chi_squared_csv(std::ostream& out, const std::vector<double>& statistics,
                           const std::vector<double>& scores);

// One row per pair: id, lineSimT1..T3, decision, label, correct.
void export_type_space(std::ostream& out, const TrainingSet& ts, const std::vector<Prediction>& predictions,
                       double gamma = 0.5);

}  // namespace cloneval
