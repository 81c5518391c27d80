#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace samplab {

/// Multi-index in up to two variables; the second entry stays 0 in 1D.
using MultiIndex = std::array<int, 2>;

inline int order_of(const MultiIndex& a) { return a[0] + a[1]; }

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double multi_factorial(const MultiIndex& a) {
  return factorial(a[0]) * factorial(a[1]);
}

/// Number of multi-indices with |a| <= order in `dim` variables.
inline int jet_size(int dim, int order) {
  return dim == 1 ? order + 1 : (order + 1) * (order + 2) / 2;
}

/// Position of a multi-index in graded lexicographic order
/// (total degree ascending; within a degree, first component descending).
inline int jet_pos(int dim, const MultiIndex& a) {
  if (dim == 1) return a[0];
  const int g = a[0] + a[1];
  return g * (g + 1) / 2 + a[1];
}

/// All multi-indices with |a| <= max_order, graded lexicographic.
std::vector<MultiIndex> multi_indices(int dim, int max_order);

/// Multi-indices with |a| == order exactly, same intra-degree ordering.
std::vector<MultiIndex> multi_indices_of_order(int dim, int order);

}  // namespace samplab
