#pragma once

#include <span>
#include <vector>

#include "samplab/multi_index.hpp"

namespace samplab {

/// Truncated multivariate Taylor expansion (1 or 2 variables), the
/// forward-mode vehicle for every derivative in the project.  Coefficients
/// are stored in graded lexicographic order; coeff(a) is the Taylor
/// coefficient, so the partial derivative is coeff(a) * a!.
class Jet {
 public:
  Jet() = default;
  Jet(int dim, int order)
      : dim_(dim), order_(order), c_(jet_size(dim, order), 0.0) {}

  static Jet constant(int dim, int order, double v) {
    Jet j(dim, order);
    j.c_[0] = v;
    return j;
  }

  /// The coordinate function x_axis expanded about the point value v.
  static Jet variable(int dim, int order, int axis, double v) {
    Jet j(dim, order);
    j.c_[0] = v;
    if (order >= 1) {
      MultiIndex e{0, 0};
      e[axis] = 1;
      j.c_[jet_pos(dim, e)] = 1.0;
    }
    return j;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  double coeff(const MultiIndex& a) const { return c_[jet_pos(dim_, a)]; }
  double& coeff(const MultiIndex& a) { return c_[jet_pos(dim_, a)]; }
  double derivative(const MultiIndex& a) const {
    return coeff(a) * multi_factorial(a);
  }
  std::span<const double> coeffs() const { return c_; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, Jet a) { a *= -1.0; return a += s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }

  static Jet multiply(const Jet& a, const Jet& b);

  /// Composition f(u) where `derivs[k]` = f^(k) evaluated at u.value().
  /// Exact under truncation because u - u(0) has no constant term.
  static Jet compose(std::span<const double> derivs, const Jet& u);

 private:
  int dim_ = 1;
  int order_ = 0;
  std::vector<double> c_;
};

Jet jexp(const Jet& u);
Jet jsin(const Jet& u);
Jet jcos(const Jet& u);
/// 1/u; u.value() must be nonzero.
Jet jinv(const Jet& u);
Jet jpow(const Jet& u, int k);

}  // namespace samplab
