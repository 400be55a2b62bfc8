#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cloneval/clone_pair.hpp"
#include "cloneval/features.hpp"

namespace cloneval {

// Labeled feature rows. `pairs` is filled only when the rows came from clone
// pairs; the TF-IDF baseline needs the source text, the other models do not.
struct TrainingSet {
  std::vector<FeatureVector> x;
  std::vector<Label> y;
  std::vector<std::string> ids;
  std::vector<ClonePair> pairs;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
  std::size_t dims() const { return x.empty() ? 0 : x.front().size(); }
  bool has_pairs() const { return !pairs.empty() && pairs.size() == x.size(); }

  std::size_t count(Label label) const;
  bool has_both_classes() const;

  // Rows at the given indices, in that order.
  TrainingSet subset(const std::vector<std::size_t>& indices) const;

  // Appends one row; `pair` may be null for feature-only sets.
  void add(std::string id, FeatureVector features, Label label, const ClonePair* pair = nullptr);

  // Throws Error(kDimensionMismatch) when rows disagree in width and
  // Error(kInvalidArgument) on an unlabeled row.
  void validate() const;

  // Extracts features for every binary-labeled pair; unlabeled pairs are
  // skipped.
  static TrainingSet from_pairs(const std::vector<ClonePair>& pairs, bool include_extras = false,
                                unsigned threads = 0);
  static TrainingSet from_table(const FeatureTable& table);

  FeatureTable to_table() const;
};

}  // namespace cloneval
