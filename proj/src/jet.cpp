#include "samplab/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace samplab {

std::vector<MultiIndex> multi_indices(int dim, int max_order) {
  std::vector<MultiIndex> out;
  out.reserve(jet_size(dim, max_order));
  for (int g = 0; g <= max_order; ++g) {
    if (dim == 1) {
      out.push_back({g, 0});
    } else {
      for (int a2 = 0; a2 <= g; ++a2) out.push_back({g - a2, a2});
    }
  }
  return out;
}

std::vector<MultiIndex> multi_indices_of_order(int dim, int order) {
  std::vector<MultiIndex> out;
  if (dim == 1) {
    out.push_back({order, 0});
  } else {
    for (int a2 = 0; a2 <= order; ++a2) out.push_back({order - a2, a2});
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet Jet::multiply(const Jet& a, const Jet& b) {
  Jet r(a.dim_, a.order_);
  const auto idx = multi_indices(a.dim_, a.order_);
  if (a.dim_ == 1) {
    for (int i = 0; i <= a.order_; ++i) {
      const double ai = a.c_[i];
      if (ai == 0.0) continue;
      for (int j = 0; i + j <= a.order_; ++j) r.c_[i + j] += ai * b.c_[j];
    }
    return r;
  }
  for (const auto& ia : idx) {
    const double av = a.coeff(ia);
    if (av == 0.0) continue;
    const int rem = a.order_ - order_of(ia);
    for (const auto& ib : multi_indices(2, rem)) {
      const MultiIndex ic{ia[0] + ib[0], ia[1] + ib[1]};
      r.coeff(ic) += av * b.coeff(ib);
    }
  }
  return r;
}

Jet Jet::compose(std::span<const double> derivs, const Jet& u) {
  const int K = u.order_;
  if (static_cast<int>(derivs.size()) < K + 1)
    throw std::invalid_argument("jet order exceeded");
  Jet w = u;
  w.c_[0] = 0.0;  // u - u(x0)
  // Horner on the truncated Taylor series of f about u(x0).
  Jet r = Jet::constant(u.dim_, K, derivs[K] / factorial(K));
  for (int k = K - 1; k >= 0; --k) {
    r = multiply(r, w);
    r.c_[0] += derivs[k] / factorial(k);
  }
  return r;
}

Jet jexp(const Jet& u) {
  const double e = std::exp(u.value());
  std::vector<double> d(u.order() + 1, e);
  return Jet::compose(d, u);
}

Jet jsin(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  std::vector<double> d(u.order() + 1);
  const double cycle[4] = {s, c, -s, -c};
  for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
  return Jet::compose(d, u);
}

Jet jcos(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  std::vector<double> d(u.order() + 1);
  const double cycle[4] = {c, -s, -c, s};
  for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
  return Jet::compose(d, u);
}

Jet jinv(const Jet& u) {
  const double v = u.value();
  if (v == 0.0) throw std::domain_error("jet reciprocal at zero");
  std::vector<double> d(u.order() + 1);
  double p = 1.0 / v;  // (-1)^k k! / v^{k+1}
  for (int k = 0; k <= u.order(); ++k) {
    d[k] = p * factorial(k) * ((k % 2) ? -1.0 : 1.0);
    p /= v;
  }
  return Jet::compose(d, u);
}

Jet jpow(const Jet& u, int k) {
  Jet r = Jet::constant(u.dim(), u.order(), 1.0);
  for (int i = 0; i < k; ++i) r = Jet::multiply(r, u);
  return r;
}

}  // namespace samplab
