#pragma once

#include <string>
#include <vector>

#include "samplab/geometry.hpp"
#include "samplab/regression.hpp"
#include "samplab/sobolev.hpp"

namespace samplab {

struct FractionalScalingRow {
  double radius;
  double fractional;  // |v|_{eps,q,B_r}
  double h1;          // |v|_{1,q,B_r}
  double ratio;       // fractional / (r^{1-eps} h1)
};

struct FractionalScalingReport {
  double eps = 0.0;
  double q = 2.0;
  std::vector<FractionalScalingRow> rows;
  bool skipped = false;  // degenerate probe (|v|_{1,q} = 0)
  bool bounded = false;  // max/min ratio <= 1.5 across radii
  SlopeFit slope;        // of |v|_{eps,q,B_r} against r
  double predicted_slope = 0.0;  // n/q + 1 - eps
  std::vector<std::string> notices;
};

/// Scaling check of the fractional-to-H1 bound on balls B(0, r).
FractionalScalingReport verify_fractional_relation(
    const FunctionSample& v, double eps, double q,
    const std::vector<double>& radii, const QuadratureSpec& quad);

struct SamplingTrialRow {
  double d;
  double lhs;    // ||u||_{l,2}
  double term1;  // d^{r-l} ||u||_{r,2}
  double term2;  // d^{n/2+mu-l} || samples ||_2
  double c_emp;  // lhs / (term1 + term2)
};

struct InequalityTrial {
  std::string function_id;
  double r = 0.0;
  int mu = 0;
  double l = 0.0;
  double correction = 1.0;  // K(ceil(l)-l, 2)
  std::vector<SamplingTrialRow> rows;
  bool consistent = false;
  std::vector<std::string> notices;
};

/// Empirical check of the p=q=kappa=2 sampling inequality over a
/// d-sequence.  The largest d plays the role of the non-constructive
/// threshold; the verdict quantifies over strictly smaller d only.
InequalityTrial verify_sampling_inequality(const FunctionSample& u,
                                           const std::string& id,
                                           const SamplingParameters& params,
                                           double l, const Domain& dom,
                                           std::vector<PointSet> sets,
                                           const QuadratureSpec& quad);

struct MuComparisonReport {
  double exponent_mu_a = 0.0;  // n/2 + mu - l
  double exponent_mu_b = 0.0;
  double exponent_difference = 0.0;
  SlopeFit measured_a;  // slope of the scaled sample term against d
  SlopeFit measured_b;
  double predicted_a = 0.0;  // mu - l (count scaling removes n/2)
  double predicted_b = 0.0;
};

MuComparisonReport compare_mu_orders(const FunctionSample& u,
                                     const SamplingParameters& params_a,
                                     const SamplingParameters& params_b,
                                     double l, const Domain& dom,
                                     const std::vector<PointSet>& sets);

void write_sampling_csv(const std::string& path, const InequalityTrial& trial);

}  // namespace samplab
