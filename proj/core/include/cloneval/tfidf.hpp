#pragma once

#include <map>
#include <string>
#include <vector>

#include "cloneval/dataset.hpp"
#include "cloneval/prediction.hpp"

namespace cloneval {

// Term -> occurrence count for one document.
using TermCounts = std::map<std::string, int>;

// Sparse TF-IDF vector.
using TermWeights = std::map<std::string, double>;

// Terms are n-grams of Type1-normalized token texts joined by '\x1f'. A pair
// document is fragment1's tokens, a separator token, then fragment2's tokens.
TermCounts pair_document(const ClonePair& pair, int n = 3);
TermCounts ngram_counts(const std::vector<std::string>& tokens, int n);

double term_frequency(const TermCounts& doc, const std::string& term);
double cosine_similarity(const TermWeights& a, const TermWeights& b);

struct TfIdfConfig {
  int n = 3;
};

// Token-trigram baseline. Each labeled pair is one document; a candidate is
// scored by its weighted mean cosine similarity to the true and false sets,
// with document frequencies taken over both sets together.
class TfIdfBaselineModel {
 public:
  TfIdfBaselineModel() = default;
  // Throws Error(kEmptyPartition) when either set is empty.
  TfIdfBaselineModel(int n, std::vector<TermCounts> true_docs, std::vector<TermCounts> false_docs,
                     std::vector<double> true_weights = {}, std::vector<double> false_weights = {});

  int n() const { return n_; }
  const std::vector<TermCounts>& true_docs() const { return true_docs_; }
  const std::vector<TermCounts>& false_docs() const { return false_docs_; }
  const std::vector<double>& true_weights() const { return true_weights_; }
  const std::vector<double>& false_weights() const { return false_weights_; }

  double idf(const std::string& term) const;
  TermWeights tfidf(const TermCounts& doc) const;

  // Unnormalized set scores (P_true, P_false), each in [0,1].
  std::pair<double, double> set_scores(const TermCounts& candidate) const;

  Prediction predict(const ClonePair& candidate) const;
  Prediction predict(const TermCounts& candidate) const;

  bool operator==(const TfIdfBaselineModel& o) const;

 private:
  void index();

  int n_ = 3;
  std::vector<TermCounts> true_docs_;
  std::vector<TermCounts> false_docs_;
  std::vector<double> true_weights_;
  std::vector<double> false_weights_;
  std::map<std::string, int> df_;
  std::vector<TermWeights> true_vectors_;
  std::vector<TermWeights> false_vectors_;
};

// Needs ts.pairs. Throws Error(kSingleClassTrainingSet) when a class is
// missing and Error(kInvalidArgument) without source pairs.
TfIdfBaselineModel train_tfidf(const TrainingSet& ts, const TfIdfConfig& cfg = {});

}  // namespace cloneval
