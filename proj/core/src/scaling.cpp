#include "cloneval/scaling.hpp"

#include <algorithm>

#include "cloneval/error.hpp"

namespace cloneval {

MinMaxScaler MinMaxScaler::fit(const std::vector<FeatureVector>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kInsufficientData, "cannot fit a scaler on zero rows");
  MinMaxScaler s;
  s.lo = rows.front().values;
  s.hi = rows.front().values;
  for (const auto& r : rows) {
    if (r.size() != s.lo.size()) throw Error(ErrorCode::kDimensionMismatch, "rows differ in width");
    for (std::size_t f = 0; f < r.size(); ++f) {
      s.lo[f] = std::min(s.lo[f], r[f]);
      s.hi[f] = std::max(s.hi[f], r[f]);
    }
  }
  return s;
}

MinMaxScaler MinMaxScaler::identity(std::size_t dims) {
  return MinMaxScaler{std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0)};
}

double MinMaxScaler::apply(std::size_t feature, double value) const {
  const double l = lo[feature], h = hi[feature];
  if (!(h > l)) return 0.0;
  return std::clamp((value - l) / (h - l), 0.0, 1.0);
}

}  // namespace cloneval
