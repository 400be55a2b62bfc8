#pragma once

#include <vector>

#include "cloneval/features.hpp"

namespace cloneval {

// Per-feature min-max scaling to [0,1] with bounds taken from training data.
// Values outside the bounds are clamped; a constant feature maps to 0.
struct MinMaxScaler {
  std::vector<double> lo;
  std::vector<double> hi;

  static MinMaxScaler fit(const std::vector<FeatureVector>& rows);
  // Identity scaler (bounds [0,1]) for the given width.
  static MinMaxScaler identity(std::size_t dims);

  std::size_t dims() const { return lo.size(); }
  double apply(std::size_t feature, double value) const;

  bool operator==(const MinMaxScaler&) const = default;
};

}  // namespace cloneval
