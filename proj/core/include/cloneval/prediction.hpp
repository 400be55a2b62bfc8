#pragma once

#include <array>

#include "cloneval/clone_pair.hpp"

namespace cloneval {

// Class probabilities (Pr[true clone], Pr[false clone]).
struct Prediction {
  std::array<double, 2> probs{0.5, 0.5};

  // Probability that the pair is a true clone.
  double lambda() const { return probs[0]; }

  bool operator==(const Prediction&) const = default;
};

struct DecisionConfig {
  double gamma = 0.5;
};

// TruePositive iff Pr[true clone] >= gamma.
inline Label decide(const Prediction& p, const DecisionConfig& cfg = {}) {
  return p.probs[0] >= cfg.gamma ? Label::kTruePositive : Label::kFalsePositive;
}

}  // namespace cloneval
