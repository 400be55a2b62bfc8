#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cloneval/fragment.hpp"

namespace cloneval {

enum class Label { kUnlabeled, kTruePositive, kFalsePositive };

// "TP" / "FP" / "UNLABELED" as used in CSV exports.
std::string_view to_short_string(Label label);
// "TruePositive" / "FalsePositive" / "Unlabeled".
std::string_view to_string(Label label);

// Accepts TP/FP/UNLABELED, TruePositive/FalsePositive/Unlabeled, true/false
// (case-insensitive). Returns nullopt for anything else.
std::optional<Label> parse_label(std::string_view text);

inline bool is_binary(Label label) { return label != Label::kUnlabeled; }

struct ClonePair {
  std::string id;
  CodeFragment fragment1;
  CodeFragment fragment2;
  std::string detector;  // tool name/version, e.g. "NiCad 4.0"
  Label label = Label::kUnlabeled;
  std::string labeler;     // set exactly when label is binary
  std::string labeled_at;  // ISO-8601 timestamp

  bool operator==(const ClonePair&) const = default;
};

}  // namespace cloneval
