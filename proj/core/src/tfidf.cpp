#include "cloneval/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "cloneval/error.hpp"
#include "cloneval/normalize.hpp"

namespace cloneval {
namespace {

constexpr char kJoin = '\x1f';
constexpr const char* kSeparator = "\x1e";

std::vector<std::string> type1_texts(const CodeFragment& f) {
  std::vector<std::string> out;
  for (const Token& t : normalize(f, NormalizationLevel::kType1).tokens) out.push_back(t.text);
  return out;
}

double mean_similarity(const TermWeights& c, const std::vector<TermWeights>& vectors,
                       const std::vector<double>& weights) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    num += cosine_similarity(c, vectors[i]) * weights[i];
    den += weights[i];
  }
  if (den <= 0.0) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace

TermCounts ngram_counts(const std::vector<std::string>& tokens, int n) {
  TermCounts counts;
  if (n < 1 || tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string term = tokens[i];
    for (int k = 1; k < n; ++k) {
      term += kJoin;
      term += tokens[i + static_cast<std::size_t>(k)];
    }
    ++counts[term];
  }
  return counts;
}

TermCounts pair_document(const ClonePair& pair, int n) {
  std::vector<std::string> tokens = type1_texts(pair.fragment1);
  tokens.emplace_back(kSeparator);
  for (auto& t : type1_texts(pair.fragment2)) tokens.push_back(std::move(t));
  return ngram_counts(tokens, n);
}

double term_frequency(const TermCounts& doc, const std::string& term) {
  long total = 0;
  for (const auto& [t, c] : doc) total += c;
  const auto it = doc.find(term);
  if (total == 0 || it == doc.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

double cosine_similarity(const TermWeights& a, const TermWeights& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, w] : a) {
    na += w * w;
    const auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

TfIdfBaselineModel::TfIdfBaselineModel(int n, std::vector<TermCounts> true_docs, std::vector<TermCounts> false_docs,
                                       std::vector<double> true_weights, std::vector<double> false_weights)
    : n_(n),
      true_docs_(std::move(true_docs)),
      false_docs_(std::move(false_docs)),
      true_weights_(std::move(true_weights)),
      false_weights_(std::move(false_weights)) {
  if (true_docs_.empty() || false_docs_.empty()) {
    throw Error(ErrorCode::kEmptyPartition, "both the true and the false document sets must be non-empty");
  }
  if (true_weights_.empty()) true_weights_.assign(true_docs_.size(), 1.0);
  if (false_weights_.empty()) false_weights_.assign(false_docs_.size(), 1.0);
  if (true_weights_.size() != true_docs_.size() || false_weights_.size() != false_docs_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one weight per document is required");
  }
  for (const double w : true_weights_) {
    if (w < 0.0 || w > 1.0) throw Error(ErrorCode::kInvalidArgument, "document weights must lie in [0,1]");
  }
  for (const double w : false_weights_) {
    if (w < 0.0 || w > 1.0) throw Error(ErrorCode::kInvalidArgument, "document weights must lie in [0,1]");
  }
  index();
}

void TfIdfBaselineModel::index() {
  df_.clear();
  for (const auto* docs : {&true_docs_, &false_docs_}) {
    for (const auto& d : *docs) {
      for (const auto& [t, c] : d) ++df_[t];
    }
  }
  true_vectors_.clear();
  false_vectors_.clear();
  for (const auto& d : true_docs_) true_vectors_.push_back(tfidf(d));
  for (const auto& d : false_docs_) false_vectors_.push_back(tfidf(d));
}

double TfIdfBaselineModel::idf(const std::string& term) const {
  const double docs = static_cast<double>(true_docs_.size() + false_docs_.size());
  const auto it = df_.find(term);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log(docs / (1.0 + df));
}

TermWeights TfIdfBaselineModel::tfidf(const TermCounts& doc) const {
  long total = 0;
  for (const auto& [t, c] : doc) total += c;
  TermWeights out;
  for (const auto& [t, c] : doc) out[t] = static_cast<double>(c) / static_cast<double>(total) * idf(t);
  return out;
}

std::pair<double, double> TfIdfBaselineModel::set_scores(const TermCounts& candidate) const {
  const TermWeights c = tfidf(candidate);
  return {mean_similarity(c, true_vectors_, true_weights_), mean_similarity(c, false_vectors_, false_weights_)};
}

Prediction TfIdfBaselineModel::predict(const TermCounts& candidate) const {
  const auto [pt, pf] = set_scores(candidate);
  Prediction p;
  if (pt + pf <= 0.0) return p;
  p.probs = {pt / (pt + pf), pf / (pt + pf)};
  return p;
}

Prediction TfIdfBaselineModel::predict(const ClonePair& candidate) const {
  return predict(pair_document(candidate, n_));
}

bool TfIdfBaselineModel::operator==(const TfIdfBaselineModel& o) const {
  return n_ == o.n_ && true_docs_ == o.true_docs_ && false_docs_ == o.false_docs_ &&
         true_weights_ == o.true_weights_ && false_weights_ == o.false_weights_;
}

TfIdfBaselineModel train_tfidf(const TrainingSet& ts, const TfIdfConfig& cfg) {
  if (!ts.has_pairs()) {
    throw Error(ErrorCode::kInvalidArgument, "the TF-IDF baseline needs the source text of every pair");
  }
  if (!ts.has_both_classes()) {
    throw Error(ErrorCode::kSingleClassTrainingSet, "training set must contain TP and FP rows");
  }
  std::vector<TermCounts> t, f;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    (ts.y[i] == Label::kTruePositive ? t : f).push_back(pair_document(ts.pairs[i], cfg.n));
  }
  return TfIdfBaselineModel(cfg.n, std::move(t), std::move(f));
}

}  // namespace cloneval
