#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/clone_pair.hpp"
#include "cloneval/normalize.hpp"

namespace cloneval {

// Fixed feature order; trained models depend on it.
inline constexpr std::array<std::string_view, 8> kFeatureNames = {
    "lineSimT1", "lineSimT2", "lineSimT3", "tokSimT2",
    "tokSimT1",  "tokSimT3",  "functionsIntersected", "unmatchedBraces",
};
inline constexpr std::array<std::string_view, 2> kExtraFeatureNames = {"avgSize", "sizeDiff"};

inline constexpr std::size_t kBaseFeatureCount = kFeatureNames.size();
inline constexpr std::size_t kExtendedFeatureCount = kBaseFeatureCount + kExtraFeatureNames.size();

enum FeatureIndex : std::size_t {
  kLineSimT1 = 0,
  kLineSimT2,
  kLineSimT3,
  kTokSimT2,
  kTokSimT1,
  kTokSimT3,
  kFunctionsIntersected,
  kUnmatchedBraces,
  kAvgSize,
  kSizeDiff,
};

struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  bool has_extras() const { return values.size() == kExtendedFeatureCount; }

  bool operator==(const FeatureVector&) const = default;
};

// Names for a vector of the given width (8 or 10).
std::vector<std::string> feature_names(std::size_t dims);

// Stable fingerprint of the feature order for the given width, embedded in
// serialized models.
std::string feature_fingerprint(std::size_t dims);

// Throws Error(kEmptyFragment) if either fragment has no source text and
// Error(kUnsupportedLanguage) for non-Java input. A level at which a fragment
// normalizes to nothing contributes similarity 0.
FeatureVector extract_features(const ClonePair& pair, bool include_extras = false);

// Opens-without-close plus closes-without-open, ignoring braces in literals
// and comments.
int count_unmatched_braces(const CodeFragment& fragment);
int count_unmatched_braces(const CodeFragment& f1, const CodeFragment& f2);

// Methods only partially covered by the fragment: headers whose body is left
// open, plus one when the fragment starts inside a body it then leaves.
int functions_intersected(const CodeFragment& fragment);
int functions_intersected(const ClonePair& pair);

// Parallel extraction over many pairs; result order matches input order.
std::vector<FeatureVector> extract_features_batch(const std::vector<ClonePair>& pairs,
                                                  bool include_extras = false,
                                                  unsigned threads = 0);

// 64-bit FNV-1a, used for cache keys and fingerprints.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

// Feature CSV: id, feature columns, label (TP/FP/UNLABELED). Values are
// written in shortest round-trip form so a re-read reproduces them exactly.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
};

void write_feature_csv(std::ostream& out, const FeatureTable& table);
// Throws Error(kMalformedDocument) on a bad header or row.
FeatureTable read_feature_csv(std::istream& in);

}  // namespace cloneval
