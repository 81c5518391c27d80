#include "samplab/kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace samplab {

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "matern") return KernelFamily::Matern;
  if (name == "wendland") return KernelFamily::Wendland;
  throw std::invalid_argument("unknown kernel family: " + name);
}

namespace {

using TermSeries = std::map<int, double>;  // power -> coefficient

/// (1/r) d/dr applied to exp(-a r) * sum c r^e.
TermSeries divided_derivative(const TermSeries& s, double decay) {
  TermSeries out;
  for (const auto& [e, c] : s) {
    if (e != 0) out[e - 2] += c * e;
    if (decay != 0.0) out[e - 1] -= decay * c;
  }
  return out;
}

double eval_series(const TermSeries& s, double r) {
  double acc = 0.0;
  for (const auto& [e, c] : s) acc += c * std::pow(r, e);
  return acc;
}

/// Coefficients of the Matern polynomial p_k(t), normalized p_k(0) = 1.
std::vector<double> matern_poly(int k) {
  std::vector<double> c(k + 1);
  const double scale = factorial(k) / factorial(2 * k);
  for (int i = 0; i <= k; ++i)
    c[i] = scale * factorial(2 * k - i) /
           (factorial(i) * factorial(k - i)) * std::pow(2.0, i);
  return c;
}

/// Wendland psi_{3,k} polynomial coefficients in r on [0,1].
std::vector<double> wendland_poly(int k) {
  // psi_{3,1} = (1-r)^4 (4r+1)
  // psi_{3,2} = (1-r)^6 (35 r^2 + 18 r + 3) / 3
  // psi_{3,3} = (1-r)^8 (32 r^3 + 25 r^2 + 8 r + 1)
  std::vector<double> mult;
  int pw = 0;
  switch (k) {
    case 1:
      pw = 4;
      mult = {1.0, 4.0};
      break;
    case 2:
      pw = 6;
      mult = {1.0, 6.0, 35.0 / 3.0};
      break;
    case 3:
      pw = 8;
      mult = {1.0, 8.0, 25.0, 32.0};
      break;
    default:
      throw std::invalid_argument("wendland smoothness index must be 1..3");
  }
  // (1-r)^pw expanded
  std::vector<double> onemr(pw + 1);
  for (int i = 0; i <= pw; ++i)
    onemr[i] = ((i % 2) ? -1.0 : 1.0) * factorial(pw) /
               (factorial(i) * factorial(pw - i));
  std::vector<double> out(pw + mult.size(), 0.0);
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (int j = 0; j <= pw; ++j) out[i + j] += mult[i] * onemr[j];
  return out;
}

constexpr int kSeriesTerms = 44;

}  // namespace

Kernel Kernel::gaussian(double shape, double mtilde) {
  if (!(shape > 0.0)) throw std::invalid_argument("shape must be positive");
  Kernel k;
  k.family_ = KernelFamily::Gaussian;
  k.shape_ = shape;
  k.mtilde_ = mtilde;
  k.jet_cap_ = 10;
  return k;
}

Kernel Kernel::matern(int kk, double shape, double mtilde) {
  if (!(shape > 0.0)) throw std::invalid_argument("shape must be positive");
  if (kk < 1 || kk > 6)
    throw std::invalid_argument("matern half-integer index must be 1..6");
  Kernel k;
  k.family_ = KernelFamily::Matern;
  k.shape_ = shape;
  k.mtilde_ = mtilde;
  k.jet_cap_ = 2 * kk;
  k.decay_ = shape;
  const auto poly = matern_poly(kk);
  TermSeries s;
  for (int i = 0; i <= kk; ++i) s[i] = poly[i] * std::pow(shape, i);
  k.divided_.push_back(s);
  for (int j = 1; j <= k.jet_cap_; ++j)
    k.divided_.push_back(divided_derivative(k.divided_.back(), shape));
  // Taylor of p(a r) e^{-a r} in r.
  k.taylor_r_.assign(kSeriesTerms, 0.0);
  std::vector<double> expser(kSeriesTerms);
  for (int j = 0; j < kSeriesTerms; ++j)
    expser[j] = std::pow(-shape, j) / factorial(j);
  for (const auto& [e, c] : s)
    for (int j = 0; j + e < kSeriesTerms; ++j) k.taylor_r_[e + j] += c * expser[j];
  return k;
}

Kernel Kernel::wendland(int kk, double shape, double mtilde) {
  if (!(shape > 0.0)) throw std::invalid_argument("shape must be positive");
  Kernel k;
  k.family_ = KernelFamily::Wendland;
  k.shape_ = shape;
  k.mtilde_ = mtilde;
  k.jet_cap_ = 2 * kk;
  k.support_ = 1.0 / shape;
  const auto poly = wendland_poly(kk);
  TermSeries s;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (poly[i] != 0.0) s[static_cast<int>(i)] = poly[i] * std::pow(shape, i);
  k.divided_.push_back(s);
  for (int j = 1; j <= k.jet_cap_; ++j)
    k.divided_.push_back(divided_derivative(k.divided_.back(), 0.0));
  k.taylor_r_.assign(kSeriesTerms, 0.0);
  for (const auto& [e, c] : s)
    if (e < kSeriesTerms) k.taylor_r_[e] = c;
  return k;
}

double Kernel::value(double r) const {
  return sqdist_derivs(r * r, 0)[0];
}

std::vector<double> Kernel::sqdist_derivs(double t, int kmax) const {
  std::vector<double> out(kmax + 1, 0.0);
  if (family_ == KernelFamily::Gaussian) {
    const double s2 = shape_ * shape_;
    double f = std::exp(-s2 * t);
    for (int k = 0; k <= kmax; ++k) {
      out[k] = f;
      f *= -s2;
    }
    return out;
  }
  const double r = std::sqrt(std::max(t, 0.0));
  if (support_ > 0.0 && r >= support_) return out;  // outside, all zero
  if (r == 0.0) {
    // Analytic limit: only the even part of the profile contributes.
    for (int k = 0; k <= kmax; ++k)
      if (2 * k < kSeriesTerms) out[k] = taylor_r_[2 * k] * factorial(k);
    return out;
  }
  if (shape_ * r < 0.05) {
    // Series path; avoids cancellation among singular closed-form terms.
    for (int k = 0; k <= kmax; ++k) {
      double acc = 0.0;
      for (int j = 0; j < kSeriesTerms; ++j) {
        double fall = 1.0;
        for (int i = 0; i < k; ++i) fall *= 0.5 * j - i;
        if (fall == 0.0) continue;
        acc += taylor_r_[j] * fall * std::pow(t, 0.5 * j - k);
      }
      out[k] = acc;
    }
    return out;
  }
  const double damp = decay_ != 0.0 ? std::exp(-decay_ * r) : 1.0;
  double twok = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    out[k] = damp * eval_series(divided_[k], r) / twok;
    twok *= 2.0;
  }
  return out;
}

double default_mtilde(KernelFamily family, int k, double shape, int n) {
  (void)shape;
  switch (family) {
    case KernelFamily::Gaussian:
      return 8.0;  // nominal: smoother than any desk-scale data scale
    case KernelFamily::Matern:
      return (k + 0.5) + 0.5 * n - 2.0;
    case KernelFamily::Wendland:
      return k + 0.5 * n - 1.0;
  }
  return 1.0;
}

Jet kernel_jet(const Kernel& kern, const Point& x, const Point& c,
               int max_order, int dim) {
  if (max_order > kern.max_jet_order())
    throw std::invalid_argument("jet order exceeded");
  Jet dx = Jet::variable(dim, max_order, 0, x[0]) - c[0];
  Jet t = Jet::multiply(dx, dx);
  if (dim == 2) {
    Jet dy = Jet::variable(dim, max_order, 1, x[1]) - c[1];
    t += Jet::multiply(dy, dy);
  }
  const auto derivs = kern.sqdist_derivs(t.value(), max_order);
  return Jet::compose(derivs, t);
}

TrialSpace::TrialSpace(Kernel kernel, PointSet centers, int dim,
                       int tail_degree)
    : kernel_(std::move(kernel)),
      centers_(std::move(centers)),
      dim_(dim),
      tail_degree_(tail_degree) {
  if (centers_.nodes.empty())
    throw std::invalid_argument("empty sample set");
  for (std::size_t i = 0; i < centers_.size(); ++i)
    for (std::size_t j = i + 1; j < centers_.size(); ++j)
      if (dist(centers_.nodes[i], centers_.nodes[j]) == 0.0)
        throw std::invalid_argument("duplicate trial centers");
  if (tail_degree_ >= 0) tail_ = multi_indices(dim_, tail_degree_);
}

Jet TrialSpace::basis_jet(std::size_t col, const Point& x, int order) const {
  if (col < centers_.size())
    return kernel_jet(kernel_, x, centers_.nodes[col], order, dim_);
  const MultiIndex mono = tail_[col - centers_.size()];
  Jet r = jpow(Jet::variable(dim_, order, 0, x[0]), mono[0]);
  if (dim_ == 2)
    r = Jet::multiply(r, jpow(Jet::variable(dim_, order, 1, x[1]), mono[1]));
  return r;
}

double TrialSpace::eval(std::span<const double> coeffs, const Point& x,
                        const MultiIndex& a) const {
  if (coeffs.size() != size())
    throw std::invalid_argument("coefficient length mismatch");
  const int order = order_of(a);
  double acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    acc += coeffs[j] * basis_jet(j, x, order).derivative(a);
  }
  return acc;
}

FunctionSample TrialSpace::as_function(std::vector<double> coeffs) const {
  if (coeffs.size() != size())
    throw std::invalid_argument("coefficient length mismatch");
  const TrialSpace space = *this;
  return FunctionSample(
      dim_, kernel_.max_jet_order(),
      [space, coeffs](const Point& x, int k) {
        Jet acc(space.dim_, k);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          if (coeffs[j] == 0.0) continue;
          acc += space.basis_jet(j, x, k) * coeffs[j];
        }
        return acc;
      });
}

BestFitResult trial_best_fit(const TrialSpace& space,
                             const FunctionSample& target, int proxy_order,
                             const Domain& dom, const QuadratureSpec& quad,
                             double truncation) {
  const auto rule = interior_rule(dom, quad);
  const auto alphas = multi_indices(space.dim(), proxy_order);
  const Eigen::Index rows =
      static_cast<Eigen::Index>(rule.size() * alphas.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double sw = std::sqrt(rule.w[i]);
    const Jet Jt = target.jet(rule.x[i], proxy_order);
    std::vector<Jet> basis(space.size());
    for (std::size_t j = 0; j < space.size(); ++j)
      basis[j] = space.basis_jet(j, rule.x[i], proxy_order);
    for (const auto& a : alphas) {
      for (std::size_t j = 0; j < space.size(); ++j)
        A(row, static_cast<Eigen::Index>(j)) = sw * basis[j].derivative(a);
      b(row) = sw * Jt.derivative(a);
      ++row;
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(truncation);
  const Eigen::VectorXd c = svd.solve(b);
  BestFitResult res;
  res.coeffs.assign(c.data(), c.data() + c.size());
  res.error = (A * c - b).norm();
  res.effective_rank = static_cast<int>(svd.rank());
  return res;
}

}  // namespace samplab
