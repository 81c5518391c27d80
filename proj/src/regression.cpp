#include "samplab/regression.hpp"

#include <cmath>

namespace samplab {

SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& pairs) {
  SlopeFit fit;
  const int n = static_cast<int>(pairs.size());
  if (n < 2) return fit;
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pairs) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  fit.slope = sxy / sxx;
  fit.used = n;
  if (n > 2) {
    double ss = 0.0;
    for (const auto& [x, y] : pairs) {
      const double resid =
          (std::log(y) - my) - fit.slope * (std::log(x) - mx);
      ss += resid * resid;
    }
    fit.stderr_ = std::sqrt(ss / (n - 2) / sxx);
  }
  return fit;
}

}  // namespace samplab
