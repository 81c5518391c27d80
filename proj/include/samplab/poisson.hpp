#pragma once

#include <optional>
#include <string>

#include "samplab/function_sample.hpp"
#include "samplab/geometry.hpp"

namespace samplab {

/// Location on a boundary piece, for intrinsic (tangential) derivatives.
struct BoundaryFrame {
  const BoundaryPiece* piece = nullptr;
  double t = 0.0;
};

/// Mixed-data Poisson problem: Lu = (-Lap u, u|_GammaD, du/dn|_GammaN).
/// Data spaces carry orders (m, m+3/2, m+1/2); the regularity scale is
/// mtilde with mtilde - m a nonnegative integer.
class PoissonProblem {
 public:
  static PoissonProblem from_exact(Domain dom, FunctionSample exact, double m,
                                   double mtilde);
  static PoissonProblem zero_data(Domain dom, double m, double mtilde);
  /// Catalog: poly2, trig, bump.
  static PoissonProblem manufactured(const std::string& id, const Domain& dom,
                                     double m = 2.0, double mtilde = 2.0);

  const Domain& domain() const { return dom_; }
  double m() const { return m_; }
  double mtilde() const { return mtilde_; }
  bool has_exact() const { return exact_.has_value(); }
  const FunctionSample& exact() const { return *exact_; }
  const FunctionSample& f() const { return f_; }

  /// Boundary datum on a piece as a 1D field of arc length: the trace on
  /// Dirichlet pieces, the normal derivative on Neumann pieces.
  FunctionSample boundary_data(const BoundaryPiece& piece) const;

 private:
  Domain dom_;
  FunctionSample f_;
  std::optional<FunctionSample> exact_;
  double m_ = 2.0;
  double mtilde_ = 2.0;
};

/// d^alpha of the interior component of Lu, i.e. -Lap u, at x.
double apply_L_component(const FunctionSample& u, Component k, const Point& x,
                         const MultiIndex& alpha);

/// Intrinsic derivative of order `order` of the boundary component of Lu
/// at frame: tangential derivatives of the trace (Dirichlet) or of the
/// normal derivative (Neumann).  On 0-dimensional components only
/// order == 0 is meaningful.
double apply_L_component(const FunctionSample& u, Component k,
                         const BoundaryFrame& frame, int order);

}  // namespace samplab
