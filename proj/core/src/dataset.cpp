#include "cloneval/dataset.hpp"

#include <algorithm>

#include "cloneval/error.hpp"

namespace cloneval {

std::size_t TrainingSet::count(Label label) const {
  return static_cast<std::size_t>(std::count(y.begin(), y.end(), label));
}

bool TrainingSet::has_both_classes() const {
  return count(Label::kTruePositive) > 0 && count(Label::kFalsePositive) > 0;
}

TrainingSet TrainingSet::subset(const std::vector<std::size_t>& indices) const {
  TrainingSet out;
  const bool with_pairs = has_pairs();
  for (const std::size_t i : indices) {
    out.x.push_back(x.at(i));
    out.y.push_back(y.at(i));
    out.ids.push_back(ids.at(i));
    if (with_pairs) out.pairs.push_back(pairs[i]);
  }
  return out;
}

void TrainingSet::add(std::string id, FeatureVector features, Label label, const ClonePair* pair) {
  ids.push_back(std::move(id));
  x.push_back(std::move(features));
  y.push_back(label);
  if (pair != nullptr) pairs.push_back(*pair);
}

void TrainingSet::validate() const {
  if (y.size() != x.size() || ids.size() != x.size()) {
    throw Error(ErrorCode::kLengthMismatch, "training set columns differ in length");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != dims()) {
      throw Error(ErrorCode::kDimensionMismatch, "row '" + ids[i] + "' has " + std::to_string(x[i].size()) +
                                                     " features, expected " + std::to_string(dims()));
    }
    if (!is_binary(y[i])) throw Error(ErrorCode::kInvalidArgument, "row '" + ids[i] + "' is unlabeled");
  }
}

TrainingSet TrainingSet::from_pairs(const std::vector<ClonePair>& pairs, bool include_extras, unsigned threads) {
  std::vector<ClonePair> labeled;
  for (const auto& p : pairs) {
    if (is_binary(p.label)) labeled.push_back(p);
  }
  auto features = extract_features_batch(labeled, include_extras, threads);
  TrainingSet ts;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    ts.add(labeled[i].id, std::move(features[i]), labeled[i].label, &labeled[i]);
  }
  return ts;
}

TrainingSet TrainingSet::from_table(const FeatureTable& table) {
  TrainingSet ts;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (is_binary(table.labels[i])) ts.add(table.ids[i], table.rows[i], table.labels[i]);
  }
  return ts;
}

FeatureTable TrainingSet::to_table() const {
  return FeatureTable{ids, x, y};
}

}  // namespace cloneval
