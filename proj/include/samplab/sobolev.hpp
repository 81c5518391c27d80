#pragma once

#include <limits>
#include <vector>

#include "samplab/function_sample.hpp"
#include "samplab/geometry.hpp"
#include "samplab/quadrature.hpp"

namespace samplab {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A (possibly fractional) smoothness order with integrability exponent.
struct SobolevOrder {
  double l = 0.0;
  double q = 2.0;  // in [1, inf]; kInf selects sup-norm code paths

  SobolevOrder(double l_, double q_);

  int floor_order() const { return static_cast<int>(std::floor(l)); }
  double sigma() const { return l - std::floor(l); }
  double ceil_defect() const { return std::ceil(l) - l; }
  bool is_integer() const { return sigma() == 0.0; }
};

/// K of the fractional bound: 1 for integer l or q = inf, else
/// (ceil(l) - l)^(-1/q).  Always >= 1.
double correction_factor(const SobolevOrder& order);

/// Parameters of the sampling inequality with derivative data of order mu.
struct SamplingParameters {
  double r;
  int mu;
  double p, q, kappa;
  int dim;

  SamplingParameters(double r_, int mu_, double p_, double q_, double kappa_,
                     int dim_);

  double gamma() const { return std::max(p, std::max(q, kappa)); }
  double l0(int n) const;
};

/// l_max: l0 when r is a positive integer and one of (i) p<q<inf with l0
/// integer, (ii) (p,q)=(1,inf), (iii) p>=q holds; otherwise ceil(l0)-1.
double admissible_lmax(const SamplingParameters& params, int n);

/// Fractional left-hand orders are admissible exactly when p <= q.
bool fractional_order_admissible(const SamplingParameters& params);

// ---- Norms over the interior of a domain ----------------------------------

double integer_seminorm(const FunctionSample& u, int m, double q,
                        const Domain& dom, const QuadratureSpec& quad);

/// Slobodeckij double integral applied to all derivatives of total order
/// floor(l); sigma must lie in (0,1).  For q = inf the Hoelder-sigma
/// quotient is maximized over quadrature node pairs.
double gagliardo_seminorm(const FunctionSample& u, const SobolevOrder& order,
                          const Domain& dom, const QuadratureSpec& quad);

/// q-sum of the integer semi-norms 0..floor(l) plus the fractional top
/// piece when sigma > 0.
double sobolev_norm(const FunctionSample& u, const SobolevOrder& order,
                    const Domain& dom, const QuadratureSpec& quad);

// ---- Norms of 1D fields in boundary-piece parameter space -----------------

double piece_integer_seminorm(const FunctionSample& u1d, int m, double q,
                              const BoundaryPiece& piece,
                              const QuadratureSpec& quad);
double piece_gagliardo_seminorm(const FunctionSample& u1d,
                                const SobolevOrder& order,
                                const BoundaryPiece& piece,
                                const QuadratureSpec& quad);
double piece_sobolev_norm(const FunctionSample& u1d, const SobolevOrder& order,
                          const BoundaryPiece& piece,
                          const QuadratureSpec& quad);

/// Stacked sample term of the sampling inequality:
/// || prod_{|a|<=mu} d^a u |_A ||_kappa.
double sample_norm(const FunctionSample& u, int mu, const PointSet& A,
                   double kappa);

}  // namespace samplab
