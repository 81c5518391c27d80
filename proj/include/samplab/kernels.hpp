#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "samplab/function_sample.hpp"
#include "samplab/geometry.hpp"
#include "samplab/quadrature.hpp"

namespace samplab {

enum class KernelFamily { Gaussian, Matern, Wendland };

KernelFamily parse_kernel_family(const std::string& name);

/// Radial kernel with exact derivative jets.  The jet is computed by
/// forward-mode Taylor arithmetic on the profile composed with the squared
/// distance, so one code path serves every family; the Gaussian keeps a
/// closed form as cross-check material for the tests.
class Kernel {
 public:
  /// phi(r) = exp(-(shape r)^2)
  static Kernel gaussian(double shape, double mtilde);
  /// Matern with half-integer smoothness nu = k + 1/2 (k >= 1):
  /// phi(r) = p_k(shape r) exp(-shape r), C^{2k} at the origin.
  static Kernel matern(int k, double shape, double mtilde);
  /// Wendland psi_{3,k}, k in {1,2,3} (valid for n <= 3), support 1/shape.
  static Kernel wendland(int k, double shape, double mtilde);

  KernelFamily family() const { return family_; }
  double shape() const { return shape_; }
  double mtilde() const { return mtilde_; }
  int max_jet_order() const { return jet_cap_; }

  double value(double r) const;
  /// d^j/dt^j of the profile as a function of t = r^2, j = 0..kmax.
  std::vector<double> sqdist_derivs(double t, int kmax) const;

 private:
  KernelFamily family_ = KernelFamily::Gaussian;
  double shape_ = 1.0;
  double mtilde_ = 1.0;
  int jet_cap_ = 10;
  // phi_j(r) = ((1/r) d/dr)^j phi as exp(-decay r) * sum coef r^pow.
  std::vector<std::map<int, double>> divided_;
  double decay_ = 0.0;
  std::vector<double> taylor_r_;  // phi(r) = sum taylor_r_[j] r^j near 0
  double support_ = 0.0;          // 0 = global
};

/// Nominal framework smoothness for a family in dimension n (overridable).
double default_mtilde(KernelFamily family, int k, double shape, int n);

/// Values of d^a_x Phi(x, c) for all |a| <= max_order, as a jet about x.
Jet kernel_jet(const Kernel& kern, const Point& x, const Point& c,
               int max_order, int dim);

/// Kernel trial space: translates of Phi at the centers plus an optional
/// polynomial tail of total degree <= tail_degree.
class TrialSpace {
 public:
  TrialSpace(Kernel kernel, PointSet centers, int dim, int tail_degree = -1);

  const Kernel& kernel() const { return kernel_; }
  const PointSet& centers() const { return centers_; }
  int dim() const { return dim_; }
  int tail_degree() const { return tail_degree_; }
  std::size_t size() const { return centers_.size() + tail_.size(); }
  double fill() const { return centers_.fill; }

  Jet basis_jet(std::size_t col, const Point& x, int order) const;
  double eval(std::span<const double> coeffs, const Point& x,
              const MultiIndex& a) const;
  FunctionSample as_function(std::vector<double> coeffs) const;

 private:
  Kernel kernel_;
  PointSet centers_;
  int dim_;
  int tail_degree_;
  std::vector<MultiIndex> tail_;
};

struct BestFitResult {
  std::vector<double> coeffs;
  double error;  // achieved discrete proxy norm of the residual
  int effective_rank;
};

/// Coefficients minimizing the dense-quadrature proxy of the Sobolev norm
/// of (target - u_r); proxy_order is the integer norm order.
BestFitResult trial_best_fit(const TrialSpace& space,
                             const FunctionSample& target, int proxy_order,
                             const Domain& dom, const QuadratureSpec& quad,
                             double truncation = 1e-12);

}  // namespace samplab
