#pragma once

#include <utility>
#include <vector>

namespace samplab {

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  int used = 0;
};

/// Least-squares slope of log(y) against log(x); pairs with nonpositive
/// entries are ignored by the caller's policy.
SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& pairs);

}  // namespace samplab
