#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "samplab/geometry.hpp"

namespace samplab {

struct QuadratureSpec {
  int cells = 64;   // composite cells per dimension, plain integrals
  int gauss = 5;    // Gauss-Legendre points per cell / direction

  // Double-integral (Gagliardo) controls.  The inner rule is geometrically
  // graded toward the diagonal; pairs with |x-y| < cut * diam are excluded
  // and no correction is added.
  int pair_outer_cells = 40;
  int pair_outer_cells_2d = 5;  // per polar direction; budget-bound
  int pair_gauss = 4;
  int pair_layers = 34;
  int pair_theta = 16;  // angular points per full inner circle (2D)
  double cut = 1e-9;
  std::size_t max_pairs = 1000000;  // desk-scale cap
};

struct IntegrationRule {
  std::vector<Point> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Nodes/weights of the n-point Gauss-Legendre rule on (-1, 1).
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

IntegrationRule interval_rule(double a, double b, int cells, int gauss);

/// Rule over the interior of the domain (interval / square / disk).
IntegrationRule interior_rule(const Domain& dom, const QuadratureSpec& spec);

/// Rule over one boundary piece in arc-length parameter space.
IntegrationRule piece_rule(const BoundaryPiece& piece,
                           const QuadratureSpec& spec);

/// Inner 1D rule for a singular double integral: points y in (a,b) with
/// |y - x| >= cut_abs, geometrically graded toward x.
void graded_inner_rule_1d(double a, double b, double x, double cut_abs,
                          int layers, int gauss, std::vector<double>& ys,
                          std::vector<double>& ws);

/// Angular intervals of the circle |y - x| = rho lying inside the domain.
std::vector<std::pair<double, double>> circle_arcs_inside(const Domain& dom,
                                                          const Point& x,
                                                          double rho);

/// Inner 2D rule around x: radial shells from cut_abs to diam, each shell
/// integrated over the exact arcs inside the domain.
void graded_inner_rule_2d(const Domain& dom, const Point& x, double cut_abs,
                          const QuadratureSpec& spec, IntegrationRule& out);

}  // namespace samplab
