#pragma once

#include <functional>
#include <memory>
#include <string>

#include "samplab/geometry.hpp"
#include "samplab/jet.hpp"

namespace samplab {

/// A function known through its derivative jets: values and partials
/// up to a stated maximum total order at arbitrary points.  Boundary
/// fields use dim == 1 with the arc-length parameter as the variable.
class FunctionSample {
 public:
  using JetFn = std::function<Jet(const Point&, int)>;

  FunctionSample() = default;
  FunctionSample(int dim, int max_order, JetFn fn)
      : dim_(dim), max_order_(max_order), fn_(std::move(fn)) {}

  int dim() const { return dim_; }
  int max_jet_order() const { return max_order_; }

  Jet jet(const Point& x, int order) const;
  double value(const Point& x) const { return jet(x, 0).value(); }
  double derivative(const Point& x, const MultiIndex& a) const {
    return jet(x, order_of(a)).derivative(a);
  }

  FunctionSample scaled(double c) const;
  friend FunctionSample operator-(const FunctionSample& a,
                                  const FunctionSample& b);

 private:
  int dim_ = 1;
  int max_order_ = 0;
  JetFn fn_;
};

/// d^a u as a new sample (jet order budget shrinks by |a|).
FunctionSample partial_derivative(const FunctionSample& u, const MultiIndex& a);

/// -(Laplacian u) as a new sample.
FunctionSample negative_laplacian(const FunctionSample& u);

/// u restricted to a boundary piece, as a 1D function of arc length.
FunctionSample restrict_to_piece(const FunctionSample& u,
                                 const BoundaryPiece& piece);

/// t -> grad u(x(t)) . n(t) on a boundary piece.
FunctionSample normal_derivative_on_piece(const FunctionSample& u,
                                          const BoundaryPiece& piece);

// Test catalog.  All entries are analytic with exact jets.
FunctionSample fs_zero(int dim);
FunctionSample fs_constant(int dim, double v);
FunctionSample fs_linear(int dim, double c0, const Point& gradient);
FunctionSample fs_poly2(int dim);   // x^2, or x^2 + y^2
FunctionSample fs_trig(int dim);    // sin(3x), or sin(pi x) cos(pi y)
FunctionSample fs_sin_pi(int dim);  // sin(pi x) (1D oracle helper)
FunctionSample fs_bump(int dim);    // smooth bump supported inside the unit cell

/// Catalog lookup by id in {poly2, trig, bump}; throws on unknown id.
FunctionSample catalog_function(const std::string& id, int dim);

}  // namespace samplab
