#include <cmath>
#include <vector>

#include "doctest.h"
#include "samplab/kernels.hpp"
#include "samplab/rng.hpp"

using namespace samplab;

namespace {

double kernel_value_at(const Kernel& k, const Point& x, const Point& c,
                       int dim) {
  return kernel_jet(k, x, c, 0, dim).value();
}

/// Fourth-order central differences, applied recursively per axis.
double fd_derivative(const Kernel& k, Point x, const Point& c, MultiIndex a,
                     int dim, double h) {
  if (a[0] == 0 && a[1] == 0) return kernel_value_at(k, x, c, dim);
  const int axis = a[0] > 0 ? 0 : 1;
  MultiIndex b = a;
  b[axis] -= 1;
  auto at = [&](double off) {
    Point y = x;
    y[axis] += off;
    return fd_derivative(k, y, c, b, dim, h);
  };
  return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) /
         (12.0 * h);
}

std::vector<Kernel> families() {
  return {Kernel::gaussian(1.3, 8.0), Kernel::matern(2, 2.0, 2.0),
          Kernel::matern(4, 1.5, 4.0), Kernel::wendland(2, 0.7, 2.0)};
}

/// Radii where the profile is only finitely smooth; the FD oracle must
/// keep its stencil inside one smooth piece (the jets themselves are
/// exact everywhere, but differencing across a kink is not).
std::vector<double> kink_radii(const Kernel& k) {
  if (k.family() == KernelFamily::Gaussian) return {};
  if (k.family() == KernelFamily::Wendland) return {0.0, 1.0 / k.shape()};
  return {0.0};
}

bool stencil_safe(const Kernel& k, const Point& x, const Point& c) {
  const double r = dist(x, c);
  for (double kink : kink_radii(k))
    if (std::abs(r - kink) < 0.25) return false;
  return true;
}

/// Two-level Richardson extrapolation of the 4th-order stencil: the large
/// base step keeps the 1/h^3 roundoff amplification negligible.
double fd_oracle(const Kernel& k, const Point& x, const Point& c,
                 const MultiIndex& a, int dim, double h = 4e-2) {
  const double d0 = fd_derivative(k, x, c, a, dim, h);
  const double d1 = fd_derivative(k, x, c, a, dim, 0.5 * h);
  const double d2 = fd_derivative(k, x, c, a, dim, 0.25 * h);
  const double r1 = (16.0 * d1 - d0) / 15.0;
  const double r2 = (16.0 * d2 - d1) / 15.0;
  return (64.0 * r2 - r1) / 63.0;
}

}  // namespace

TEST_CASE("gaussian jet closed forms") {
  const Kernel g = Kernel::gaussian(1.0, 8.0);
  // At x = c: value 1, gradient 0, second derivative -2.
  Jet j = kernel_jet(g, {0.4, 0.0}, {0.4, 0.0}, 2, 1);
  CHECK(j.derivative({0, 0}) == doctest::Approx(1.0));
  CHECK(j.derivative({1, 0}) == doctest::Approx(0.0));
  CHECK(j.derivative({2, 0}) == doctest::Approx(-2.0));
  // Away from the center: Hermite forms of exp(-z^2).
  const double z = 0.3;
  const double v = std::exp(-z * z);
  Jet j2 = kernel_jet(g, {0.3, 0.0}, {0.0, 0.0}, 3, 1);
  CHECK(j2.derivative({0, 0}) == doctest::Approx(v));
  CHECK(j2.derivative({1, 0}) == doctest::Approx(-2.0 * z * v));
  CHECK(j2.derivative({2, 0}) == doctest::Approx((4.0 * z * z - 2.0) * v));
  CHECK(j2.derivative({3, 0}) ==
        doctest::Approx((-8.0 * z * z * z + 12.0 * z) * v));
}

TEST_CASE("matern values and smoothness at the origin") {
  const double a = 2.0;
  const Kernel m = Kernel::matern(2, a, 2.0);  // nu = 5/2
  for (double r : {0.0, 0.1, 0.7}) {
    const double expected =
        (1.0 + a * r + a * a * r * r / 3.0) * std::exp(-a * r);
    CHECK(m.value(r) == doctest::Approx(expected).epsilon(1e-12));
  }
  // At x = c odd orders use the analytic limit, never NaN.
  Jet j = kernel_jet(m, {0.2, 0.0}, {0.2, 0.0}, 4, 1);
  CHECK(j.derivative({0, 0}) == doctest::Approx(1.0));
  CHECK(j.derivative({1, 0}) == doctest::Approx(0.0));
  CHECK(j.derivative({2, 0}) == doctest::Approx(-a * a / 3.0));
  CHECK(j.derivative({3, 0}) == doctest::Approx(0.0));
  CHECK(std::isfinite(j.derivative({4, 0})));
}

TEST_CASE("wendland support and value") {
  const Kernel w = Kernel::wendland(1, 2.0, 2.0);  // support 0.5
  CHECK(w.value(0.0) == doctest::Approx(1.0));
  CHECK(w.value(0.5) == doctest::Approx(0.0));
  CHECK(w.value(0.7) == 0.0);
  // (1-t)^4 (4t+1) at t = 2*0.2 = 0.4
  const double t = 0.4;
  CHECK(w.value(0.2) ==
        doctest::Approx(std::pow(1.0 - t, 4) * (4.0 * t + 1.0)));
  Jet outside = kernel_jet(w, {0.9, 0.0}, {0.1, 0.0}, 2, 1);
  CHECK(outside.derivative({0, 0}) == 0.0);
  CHECK(outside.derivative({2, 0}) == 0.0);
}

TEST_CASE("all kernel jets to order 3 match finite differences") {
  Rng rng(2024);
  for (const auto& kern : families()) {
    for (int dim : {1, 2}) {
      for (int trial = 0; trial < 50; ++trial) {
        Point x, c;
        do {
          x = {rng.uniform(0.0, 1.0), dim == 2 ? rng.uniform(0.0, 1.0) : 0.0};
          c = {rng.uniform(0.0, 1.0), dim == 2 ? rng.uniform(0.0, 1.0) : 0.0};
        } while (!stencil_safe(kern, x, c));
        const Jet j = kernel_jet(kern, x, c, 3, dim);
        for (const auto& a : multi_indices(dim, 3)) {
          const double exact = j.derivative(a);
          const double fd = fd_oracle(kern, x, c, a, dim);
          const double tol = std::max(1e-8, 1e-6 * std::abs(exact));
          CHECK(std::abs(exact - fd) <= tol);
        }
      }
    }
  }
}

TEST_CASE("gaussian second derivative matches a plain central difference") {
  // Step 1e-4 two-point second-difference at the center.
  const Kernel g = Kernel::gaussian(1.0, 8.0);
  const double h = 1e-4;
  const auto val = [&](double x) {
    return kernel_jet(g, {x, 0.0}, {0.0, 0.0}, 0, 1).value();
  };
  const double fd = (val(h) - 2.0 * val(0.0) + val(-h)) / (h * h);
  CHECK(fd == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(kernel_jet(g, {0.0, 0.0}, {0.0, 0.0}, 2, 1).derivative({2, 0}) ==
        doctest::Approx(-2.0));
}

TEST_CASE("jet symmetry in x and c") {
  Rng rng(7);
  for (const auto& kern : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      Point x{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
      Point c{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
      const Jet jx = kernel_jet(kern, x, c, 3, 2);
      const Jet jc = kernel_jet(kern, c, x, 3, 2);
      for (const auto& a : multi_indices(2, 3)) {
        const double sign = (order_of(a) % 2) ? -1.0 : 1.0;
        const double lhs = jx.derivative(a);
        const double rhs = sign * jc.derivative(a);
        CHECK(std::abs(lhs - rhs) <=
              std::max(1e-10, 1e-9 * std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("trial space consistency: target in the span is recovered") {
  const Domain dom = Domain::interval();
  Rng rng(5);
  PointSet centers = generate_point_set(dom, Component::Interior, 0.1,
                                        PointStrategy::UniformGrid, 1);
  TrialSpace space(Kernel::matern(2, 3.0, 2.0), centers, 1);
  std::vector<double> coeffs(space.size());
  for (auto& c : coeffs) c = rng.uniform(-1.0, 1.0);
  const FunctionSample target = space.as_function(coeffs);
  QuadratureSpec quad;
  quad.cells = 32;
  const auto fit = trial_best_fit(space, target, 2, dom, quad);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num += std::pow(fit.coeffs[i] - coeffs[i], 2);
    den += coeffs[i] * coeffs[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-6);
  CHECK(fit.error <= 1e-8 * std::sqrt(den));
}

TEST_CASE("trial_eval basics") {
  const Domain dom = Domain::interval();
  PointSet centers = generate_point_set(dom, Component::Interior, 0.25,
                                        PointStrategy::UniformGrid, 1);
  TrialSpace space(Kernel::gaussian(2.0, 8.0), centers, 1);
  std::vector<double> zero(space.size(), 0.0);
  CHECK(space.eval(zero, {0.3, 0.0}, {0, 0}) == 0.0);
  CHECK(space.eval(zero, {0.7, 0.0}, {2, 0}) == 0.0);

  // Single center, coefficient 1, value at the center is Phi(0) = 1.
  PointSet one;
  one.component = Component::Interior;
  one.nodes = {{0.5, 0.0}};
  TrialSpace single(Kernel::gaussian(2.0, 8.0), one, 1);
  CHECK(single.eval(std::vector<double>{1.0}, {0.5, 0.0}, {0, 0}) ==
        doctest::Approx(1.0));

  // Antisymmetric coefficients vanish at the midpoint.
  PointSet two;
  two.component = Component::Interior;
  two.nodes = {{0.2, 0.0}, {0.8, 0.0}};
  TrialSpace pair(Kernel::gaussian(2.0, 8.0), two, 1);
  CHECK(pair.eval(std::vector<double>{1.0, -1.0}, {0.5, 0.0}, {0, 0}) ==
        doctest::Approx(0.0));
}

TEST_CASE("polynomial tail reproduces low-degree targets") {
  const Domain dom = Domain::interval();
  PointSet centers = generate_point_set(dom, Component::Interior, 0.2,
                                        PointStrategy::UniformGrid, 1);
  const FunctionSample target = fs_linear(1, 0.25, {1.5, 0.0});
  QuadratureSpec quad;
  quad.cells = 24;
  TrialSpace bare(Kernel::wendland(2, 1.5, 2.0), centers, 1);
  TrialSpace tailed(Kernel::wendland(2, 1.5, 2.0), centers, 1, 1);
  const auto fit_bare = trial_best_fit(bare, target, 1, dom, quad);
  const auto fit_tail = trial_best_fit(tailed, target, 1, dom, quad);
  CHECK(fit_tail.error <= 1e-8);
  CHECK(fit_tail.error <= fit_bare.error + 1e-12);
}

TEST_CASE("duplicate centers are rejected") {
  PointSet bad;
  bad.component = Component::Interior;
  bad.nodes = {{0.25, 0.0}, {0.25, 0.0}};
  CHECK_THROWS_AS(TrialSpace(Kernel::gaussian(1.0, 8.0), bad, 1),
                  std::invalid_argument);
}

TEST_CASE("jet order above the kernel cap is rejected") {
  const Kernel m = Kernel::matern(2, 1.0, 2.0);  // C^4
  CHECK_THROWS_WITH_AS(kernel_jet(m, {0.3, 0.0}, {0.1, 0.0}, 5, 1),
                       "jet order exceeded", std::invalid_argument);
}

TEST_CASE("best-fit error decreases monotonically under center refinement") {
  const Domain dom = Domain::interval();
  const FunctionSample target = fs_sin_pi(1);
  QuadratureSpec quad;
  quad.cells = 32;
  double prev = 1e300;
  for (double d : {0.2, 0.1, 0.05}) {
    PointSet centers = generate_point_set(dom, Component::Interior, d,
                                          PointStrategy::UniformGrid, 1);
    TrialSpace space(Kernel::matern(2, 3.0, 1.0), centers, 1);
    const auto fit = trial_best_fit(space, target, 2, dom, quad);
    CHECK(fit.error <= prev * (1.0 + 1e-9));
    prev = fit.error;
  }
}
