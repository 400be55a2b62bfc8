#include "cloneval/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "cloneval/csv.hpp"
#include "cloneval/error.hpp"
#include "random.hpp"

namespace cloneval {
namespace {

void check_binary(const std::vector<Prediction>& predictions, const std::vector<Label>& labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predictions.size()) + " predictions for " +
                                                std::to_string(labels.size()) + " labels");
  }
  for (const Label l : labels) {
    if (!is_binary(l)) throw Error(ErrorCode::kInvalidArgument, "metrics need TP/FP labels only");
  }
}

double ratio(std::size_t num, std::size_t den, bool& undefined) {
  undefined = den == 0;
  return undefined ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

MetricSummary summarize(const std::vector<MetricsReport>& folds, double MetricsReport::*field) {
  MetricSummary s;
  if (folds.empty()) return s;
  for (const auto& f : folds) s.mean += f.*field;
  s.mean /= static_cast<double>(folds.size());
  double ss = 0.0;
  for (const auto& f : folds) ss += (f.*field - s.mean) * (f.*field - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(folds.size()));
  return s;
}

struct FoldOutcome {
  std::vector<Prediction> predictions;
  std::vector<double> trace;
  std::exception_ptr error;
};

FoldOutcome run_fold(const TrainingSet& ts, const std::vector<std::size_t>& test_idx, const TrainerConfig& trainer,
                     const CvConfig& cfg, int fold) {
  FoldOutcome out;
  try {
    std::vector<bool> in_test(ts.size(), false);
    for (const std::size_t i : test_idx) in_test[i] = true;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!in_test[i]) train_idx.push_back(i);
    }
    const TrainingSet train = ts.subset(train_idx);
    const TrainingSet test = ts.subset(test_idx);
    TrainerConfig fold_cfg = trainer;
    set_seed(fold_cfg, cfg.seed + static_cast<std::uint64_t>(fold));

    EpochObserver observer;
    if (cfg.record_epoch_trace && std::holds_alternative<NeuralNetConfig>(fold_cfg) && !test.empty()) {
      observer = [&](int, const NeuralNetModel& m) {
        out.trace.push_back(compute_metrics(m.predict(test.x), test.y, cfg.gamma).accuracy);
      };
    }
    const Model model = train_model(train, fold_cfg, observer);
    out.predictions = predict_rows(model, test);
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<Prediction>& predictions, const std::vector<Label>& labels,
                              double gamma) {
  check_binary(predictions, labels);
  MetricsReport m;
  m.gamma = gamma;
  const DecisionConfig dc{gamma};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted_true = decide(predictions[i], dc) == Label::kTruePositive;
    const bool actual_true = labels[i] == Label::kTruePositive;
    if (predicted_true && actual_true) ++m.tp;
    if (predicted_true && !actual_true) ++m.fp;
    if (!predicted_true && !actual_true) ++m.tn;
    if (!predicted_true && actual_true) ++m.fn;
  }
  bool unused = false;
  m.accuracy = ratio(m.tp + m.tn, m.total(), unused);
  m.precision = ratio(m.tp, m.tp + m.fp, m.precision_undefined);
  m.recall = ratio(m.tp, m.tp + m.fn, m.recall_undefined);
  m.tp_rate = m.recall;
  m.fp_rate = ratio(m.fp, m.fp + m.tn, m.fp_rate_undefined);
  m.f1_undefined = m.precision + m.recall == 0.0;
  m.f1 = m.f1_undefined ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

CurveReport curve_and_auc(const std::vector<Prediction>& predictions, const std::vector<Label>& labels,
                          CurveKind kind) {
  check_binary(predictions, labels);
  std::size_t pos = 0;
  for (const Label l : labels) pos += l == Label::kTruePositive ? 1 : 0;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) {
    throw Error(ErrorCode::kSingleClassLabels, "a curve needs both TP and FP labels");
  }

  std::vector<double> thresholds{0.0, 1.0};
  for (const auto& p : predictions) thresholds.push_back(p.lambda());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.insert(thresholds.begin(), std::nextafter(thresholds.front(), INFINITY));

  // Scores sorted descending let one pass count positives above each cut.
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return predictions[a].lambda() > predictions[b].lambda(); });

  CurveReport curve;
  curve.kind = kind;
  std::size_t next = 0, tp = 0, fp = 0;
  for (const double t : thresholds) {
    while (next < order.size() && predictions[order[next]].lambda() >= t) {
      (labels[order[next]] == Label::kTruePositive ? tp : fp) += 1;
      ++next;
    }
    const double tpr = static_cast<double>(tp) / static_cast<double>(pos);
    CurvePoint pt{t, 0.0, 0.0};
    if (kind == CurveKind::kRoc) {
      pt.x = static_cast<double>(fp) / static_cast<double>(neg);
      pt.y = tpr;
    } else {
      pt.x = tpr;
      pt.y = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    curve.points.push_back(pt);
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc += (b.x - a.x) * (a.y + b.y) / 2.0;
  }
  curve.auc = std::clamp(curve.auc, 0.0, 1.0);
  return curve;
}

double recommend_gamma(const CurveReport& roc) {
  if (roc.kind != CurveKind::kRoc) throw Error(ErrorCode::kInvalidArgument, "recommend_gamma needs a ROC curve");
  struct Interval {
    double lo, hi, j;  // gammas in (lo, hi] share one decision set
    bool closed_lo;
  };
  std::vector<Interval> intervals;
  const auto& pts = roc.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double hi = std::min(pts[i].threshold, 1.0);
    const bool last = i + 1 == pts.size();
    const double lo = last ? 0.0 : std::max(pts[i + 1].threshold, 0.0);
    if (hi < lo || (!last && hi <= lo)) continue;
    intervals.push_back({lo, hi, pts[i].y - pts[i].x, last});
  }
  if (intervals.empty()) return 0.5;
  double best = -INFINITY;
  for (const auto& iv : intervals) best = std::max(best, iv.j);
  constexpr double kTieTolerance = 1e-12;

  double chosen = 0.5, chosen_distance = INFINITY;
  for (const auto& iv : intervals) {
    if (iv.j < best - kTieTolerance) continue;
    const bool contains_half = (iv.closed_lo ? 0.5 >= iv.lo : 0.5 > iv.lo) && 0.5 <= iv.hi;
    if (contains_half) return 0.5;
    const double mid = (iv.lo + iv.hi) / 2.0;
    const double distance = std::abs(mid - 0.5);
    if (distance < chosen_distance) {
      chosen = mid;
      chosen_distance = distance;
    }
  }
  return chosen;
}

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<Label>& labels, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > labels.size()) {
    throw Error(ErrorCode::kInsufficientData,
                "k-fold needs 2 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(labels.size()) + ")");
  }
  std::vector<std::size_t> tp, fp;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == Label::kTruePositive ? tp : fp).push_back(i);
  detail::Rng rng(seed);
  detail::shuffle(tp, rng);
  detail::shuffle(fp, rng);
  std::vector<std::size_t> dealt = tp;
  dealt.insert(dealt.end(), fp.begin(), fp.end());
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < dealt.size(); ++i) folds[i % folds.size()].push_back(dealt[i]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

CvReport k_fold_cross_validate(const TrainingSet& ts, const TrainerConfig& trainer, const CvConfig& cfg) {
  ts.validate();
  if (!ts.has_both_classes()) {
    throw Error(ErrorCode::kSingleClassTrainingSet, "cross-validation needs TP and FP rows");
  }
  CvReport report;
  report.k = cfg.k;
  report.seed = cfg.seed;
  report.gamma = cfg.gamma;
  report.folds = stratified_folds(ts.y, cfg.k, cfg.seed);

  const std::size_t k = report.folds.size();
  std::vector<FoldOutcome> outcomes(k);
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(k));
  if (threads <= 1) {
    for (std::size_t f = 0; f < k; ++f) outcomes[f] = run_fold(ts, report.folds[f], trainer, cfg, static_cast<int>(f));
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t f = next++; f < k; f = next++) {
        outcomes[f] = run_fold(ts, report.folds[f], trainer, cfg, static_cast<int>(f));
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  report.predictions.resize(ts.size());
  std::size_t longest_trace = 0;
  for (std::size_t f = 0; f < k; ++f) {
    if (outcomes[f].error) std::rethrow_exception(outcomes[f].error);
    const auto& idx = report.folds[f];
    std::vector<Label> truth;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      report.predictions[idx[j]] = outcomes[f].predictions[j];
      truth.push_back(ts.y[idx[j]]);
    }
    MetricsReport m = compute_metrics(outcomes[f].predictions, truth, cfg.gamma);
    if (m.tp + m.fn == 0 || m.fp + m.tn == 0) {
      report.warnings.push_back("fold " + std::to_string(f) + " holds a single class");
    }
    report.fold_metrics.push_back(m);
    longest_trace = std::max(longest_trace, outcomes[f].trace.size());
  }
  report.accuracy = summarize(report.fold_metrics, &MetricsReport::accuracy);
  report.precision = summarize(report.fold_metrics, &MetricsReport::precision);
  report.recall = summarize(report.fold_metrics, &MetricsReport::recall);
  report.f1 = summarize(report.fold_metrics, &MetricsReport::f1);

  if (longest_trace > 0) {
    report.epoch_accuracy.assign(longest_trace, 0.0);
    for (const auto& o : outcomes) {
      for (std::size_t e = 0; e < longest_trace; ++e) {
        report.epoch_accuracy[e] += o.trace.empty() ? 0.0 : o.trace[std::min(e, o.trace.size() - 1)];
      }
    }
    for (auto& v : report.epoch_accuracy) v /= static_cast<double>(k);
  }
  return report;
}

std::vector<double> chi_squared_statistics(const TrainingSet& ts, int bins) {
  ts.validate();
  if (!ts.has_both_classes()) throw Error(ErrorCode::kSingleClassLabels, "chi-squared needs TP and FP rows");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
  const double n = static_cast<double>(ts.size());
  const double n_tp = static_cast<double>(ts.count(Label::kTruePositive));
  const double n_fp = n - n_tp;
  std::vector<double> stats;
  for (std::size_t f = 0; f < ts.dims(); ++f) {
    double lo = ts.x.front()[f], hi = lo;
    for (const auto& row : ts.x) {
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    std::vector<double> obs_tp(static_cast<std::size_t>(bins), 0.0), obs_fp(obs_tp);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::size_t b = 0;
      if (hi > lo) {
        b = static_cast<std::size_t>(std::floor((ts.x[i][f] - lo) / (hi - lo) * bins));
        b = std::min(b, static_cast<std::size_t>(bins - 1));
      }
      (ts.y[i] == Label::kTruePositive ? obs_tp : obs_fp)[b] += 1.0;
    }
    double chi = 0.0;
    for (std::size_t b = 0; b < obs_tp.size(); ++b) {
      const double row = obs_tp[b] + obs_fp[b];
      if (row == 0.0) continue;
      const double e_tp = row * n_tp / n, e_fp = row * n_fp / n;
      chi += (obs_tp[b] - e_tp) * (obs_tp[b] - e_tp) / e_tp + (obs_fp[b] - e_fp) * (obs_fp[b] - e_fp) / e_fp;
    }
    stats.push_back(chi);
  }
  return stats;
}

std::vector<double> chi_squared_feature_scores(const TrainingSet& ts, int bins) {
  std::vector<double> s = chi_squared_statistics(ts, bins);
  const double top = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
  for (auto& v : s) v = top > 0.0 ? v / top : 0.0;
  return s;
}

void write_metrics_text(std::ostream& out, const MetricsReport& m) {
  using csv::format_fixed6;
  out << "gamma      " << format_fixed6(m.gamma) << "\n"
      << "confusion  TP=" << m.tp << " FP=" << m.fp << " TN=" << m.tn << " FN=" << m.fn << "\n"
      << "accuracy   " << format_fixed6(m.accuracy) << "\n"
      << "precision  " << format_fixed6(m.precision) << (m.precision_undefined ? " (undefined)" : "") << "\n"
      << "recall     " << format_fixed6(m.recall) << (m.recall_undefined ? " (undefined)" : "") << "\n"
      << "f1         " << format_fixed6(m.f1) << (m.f1_undefined ? " (undefined)" : "") << "\n"
      << "tp_rate    " << format_fixed6(m.tp_rate) << "\n"
      << "fp_rate    " << format_fixed6(m.fp_rate) << (m.fp_rate_undefined ? " (undefined)" : "") << "\n";
}

void write_cv_text(std::ostream& out, const CvReport& cv) {
  using csv::format_fixed6;
  out << cv.k << "-fold cross-validation (seed " << cv.seed << ", gamma " << format_fixed6(cv.gamma) << ")\n";
  for (std::size_t f = 0; f < cv.fold_metrics.size(); ++f) {
    const auto& m = cv.fold_metrics[f];
    out << "fold " << f << "  n=" << m.total() << "  accuracy " << format_fixed6(m.accuracy) << "  precision "
        << format_fixed6(m.precision) << "  recall " << format_fixed6(m.recall) << "  f1 " << format_fixed6(m.f1)
        << "\n";
  }
  auto line = [&](const char* name, const MetricSummary& s) {
    out << "mean " << name << " " << format_fixed6(s.mean) << " (sd " << format_fixed6(s.stddev) << ")\n";
  };
  line("accuracy ", cv.accuracy);
  line("precision", cv.precision);
  line("recall   ", cv.recall);
  line("f1       ", cv.f1);
  for (const auto& w : cv.warnings) out << "warning: " << w << "\n";
}

void write_cv_csv(std::ostream& out, const CvReport& cv) {
  csv::write_row(out, {"fold", "n", "tp", "fp", "tn", "fn", "accuracy", "precision", "recall", "f1"});
  for (std::size_t f = 0; f < cv.fold_metrics.size(); ++f) {
    const auto& m = cv.fold_metrics[f];
    csv::write_row(out, {std::to_string(f), std::to_string(m.total()), std::to_string(m.tp), std::to_string(m.fp),
                         std::to_string(m.tn), std::to_string(m.fn), csv::format_fixed6(m.accuracy),
                         csv::format_fixed6(m.precision), csv::format_fixed6(m.recall), csv::format_fixed6(m.f1)});
  }
}

void write_curve_csv(std::ostream& out, const CurveReport& curve) {
  const bool roc = curve.kind == CurveKind::kRoc;
  csv::write_row(out, {"threshold", roc ? "fp_rate" : "recall", roc ? "tp_rate" : "precision"});
  for (const auto& p : curve.points) {
    csv::write_row(out, {csv::format_fixed6(p.threshold), csv::format_fixed6(p.x), csv::format_fixed6(p.y)});
  }
}

void write_epoch_trace_csv(std::ostream& out, const std::vector<double>& epoch_accuracy) {
  csv::write_row(out, {"epoch", "accuracy"});
  for (std::size_t e = 0; e < epoch_accuracy.size(); ++e) {
    csv::write_row(out, {std::to_string(e + 1), csv::format_fixed6(epoch_accuracy[e])});
  }
}

void write_chi_squared_csv(std::ostream& out, const std::vector<double>& statistics,
                           const std::vector<double>& scores) {
  const auto names = feature_names(statistics.size());
  csv::write_row(out, {"feature", "chi_squared", "score"});
  for (std::size_t f = 0; f < statistics.size(); ++f) {
    csv::write_row(out, {names[f], csv::format_fixed6(statistics[f]), csv::format_fixed6(scores[f])});
  }
}

void export_type_space(std::ostream& out, const TrainingSet& ts, const std::vector<Prediction>& predictions,
                       double gamma) {
  if (predictions.size() != ts.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one prediction per row is required");
  }
  csv::write_row(out, {"id", "lineSimT1", "lineSimT2", "lineSimT3", "decision", "label", "correct"});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Label d = decide(predictions[i], DecisionConfig{gamma});
    csv::write_row(out, {ts.ids[i], csv::format_fixed6(ts.x[i][kLineSimT1]), csv::format_fixed6(ts.x[i][kLineSimT2]),
                         csv::format_fixed6(ts.x[i][kLineSimT3]), std::string(to_short_string(d)),
                         std::string(to_short_string(ts.y[i])), d == ts.y[i] ? "1" : "0"});
  }
}

}  // namespace cloneval
