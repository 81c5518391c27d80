#include "samplab/function_sample.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace samplab {

namespace {
constexpr double kPi = std::numbers::pi;
}

Jet FunctionSample::jet(const Point& x, int order) const {
  if (!fn_) throw std::logic_error("empty function sample");
  if (order > max_order_) throw std::invalid_argument("jet order exceeded");
  return fn_(x, order);
}

FunctionSample FunctionSample::scaled(double c) const {
  auto base = *this;
  return FunctionSample(dim_, max_order_, [base, c](const Point& x, int k) {
    return base.jet(x, k) * c;
  });
}

FunctionSample operator-(const FunctionSample& a, const FunctionSample& b) {
  const int order = std::min(a.max_order_, b.max_order_);
  return FunctionSample(a.dim_, order, [a, b](const Point& x, int k) {
    return a.jet(x, k) - b.jet(x, k);
  });
}

namespace {

/// Taylor coefficients of d^a u from the coefficients of u.
Jet shift_jet(const Jet& J, const MultiIndex& a, int out_order) {
  Jet r(J.dim(), out_order);
  for (const auto& b : multi_indices(J.dim(), out_order)) {
    const MultiIndex src{b[0] + a[0], b[1] + a[1]};
    r.coeff(b) = J.coeff(src) * multi_factorial(src) / multi_factorial(b);
  }
  return r;
}

/// u(x(t)) as a 1D jet: compose the ambient jet with the curve jets.
Jet compose_on_curve(const Jet& U, const std::array<Jet, 2>& curve) {
  const int K = curve[0].order();
  Jet dx = curve[0];
  dx -= curve[0].value();
  Jet dy = curve[1];
  dy -= curve[1].value();
  Jet result(1, K);
  // Powers of the centered curve components, truncated at K.
  std::vector<Jet> px(K + 1), py(K + 1);
  px[0] = Jet::constant(1, K, 1.0);
  py[0] = Jet::constant(1, K, 1.0);
  for (int i = 1; i <= K; ++i) {
    px[i] = Jet::multiply(px[i - 1], dx);
    py[i] = Jet::multiply(py[i - 1], dy);
  }
  for (const auto& a : multi_indices(U.dim(), U.order())) {
    const double c = U.coeff(a);
    if (c == 0.0) continue;
    if (U.dim() == 1)
      result += px[a[0]] * c;
    else
      result += Jet::multiply(px[a[0]], py[a[1]]) * c;
  }
  return result;
}

}  // namespace

FunctionSample partial_derivative(const FunctionSample& u,
                                  const MultiIndex& a) {
  const int drop = order_of(a);
  return FunctionSample(u.dim(), u.max_jet_order() - drop,
                        [u, a, drop](const Point& x, int k) {
                          return shift_jet(u.jet(x, k + drop), a, k);
                        });
}

FunctionSample negative_laplacian(const FunctionSample& u) {
  const int dim = u.dim();
  return FunctionSample(dim, u.max_jet_order() - 2,
                        [u, dim](const Point& x, int k) {
                          const Jet J = u.jet(x, k + 2);
                          Jet r = shift_jet(J, {2, 0}, k);
                          if (dim == 2) r += shift_jet(J, {0, 2}, k);
                          return -r;
                        });
}

FunctionSample restrict_to_piece(const FunctionSample& u,
                                 const BoundaryPiece& piece) {
  if (piece.dim == 1) {
    const double v = u.value(piece.endpoint);
    return FunctionSample(1, u.max_jet_order(), [v](const Point&, int k) {
      return Jet::constant(1, k, v);
    });
  }
  return FunctionSample(1, u.max_jet_order(), [u, piece](const Point& t, int k) {
    const auto curve = piece.curve_jets(t[0], k);
    const Point p{curve[0].value(), curve[1].value()};
    return compose_on_curve(u.jet(p, k), curve);
  });
}

FunctionSample normal_derivative_on_piece(const FunctionSample& u,
                                          const BoundaryPiece& piece) {
  if (piece.dim == 1) {
    const double v =
        u.derivative(piece.endpoint, {1, 0}) * piece.normal_sign;
    return FunctionSample(1, u.max_jet_order() - 1, [v](const Point&, int k) {
      return Jet::constant(1, k, v);
    });
  }
  FunctionSample ux = partial_derivative(u, {1, 0});
  FunctionSample uy = partial_derivative(u, {0, 1});
  return FunctionSample(
      1, u.max_jet_order() - 1, [ux, uy, piece](const Point& t, int k) {
        const auto curve = piece.curve_jets(t[0], k);
        const Point p{curve[0].value(), curve[1].value()};
        const Jet gx = compose_on_curve(ux.jet(p, k), curve);
        const Jet gy = compose_on_curve(uy.jet(p, k), curve);
        if (!piece.is_arc)
          return gx * piece.outward[0] + gy * piece.outward[1];
        // n(t) = (x(t) - center) / radius
        const Jet nx = (curve[0] - piece.center[0]) * (1.0 / piece.radius);
        const Jet ny = (curve[1] - piece.center[1]) * (1.0 / piece.radius);
        return Jet::multiply(gx, nx) + Jet::multiply(gy, ny);
      });
}

namespace {
constexpr int kCatalogOrder = 12;
}

FunctionSample fs_zero(int dim) {
  return FunctionSample(dim, kCatalogOrder,
                        [dim](const Point&, int k) { return Jet(dim, k); });
}

FunctionSample fs_constant(int dim, double v) {
  return FunctionSample(dim, kCatalogOrder, [dim, v](const Point&, int k) {
    return Jet::constant(dim, k, v);
  });
}

FunctionSample fs_linear(int dim, double c0, const Point& gradient) {
  return FunctionSample(dim, kCatalogOrder,
                        [dim, c0, gradient](const Point& p, int k) {
                          Jet r = Jet::variable(dim, k, 0, p[0]) * gradient[0];
                          if (dim == 2)
                            r += Jet::variable(dim, k, 1, p[1]) * gradient[1];
                          return r + c0;
                        });
}

FunctionSample fs_poly2(int dim) {
  return FunctionSample(dim, kCatalogOrder, [dim](const Point& p, int k) {
    Jet x = Jet::variable(dim, k, 0, p[0]);
    Jet r = Jet::multiply(x, x);
    if (dim == 2) {
      Jet y = Jet::variable(dim, k, 1, p[1]);
      r += Jet::multiply(y, y);
    }
    return r;
  });
}

FunctionSample fs_trig(int dim) {
  return FunctionSample(dim, kCatalogOrder, [dim](const Point& p, int k) {
    if (dim == 1) return jsin(Jet::variable(1, k, 0, p[0]) * 3.0);
    Jet x = Jet::variable(2, k, 0, p[0]);
    Jet y = Jet::variable(2, k, 1, p[1]);
    return Jet::multiply(jsin(x * kPi), jcos(y * kPi));
  });
}

FunctionSample fs_sin_pi(int dim) {
  return FunctionSample(dim, kCatalogOrder, [dim](const Point& p, int k) {
    return jsin(Jet::variable(dim, k, 0, p[0]) * kPi);
  });
}

FunctionSample fs_bump(int dim) {
  // exp(1 - 1/(1 - rho^2)) inside rho < 1, rho = |x - c| / 0.4, c the cell
  // center; identically zero outside.
  return FunctionSample(dim, kCatalogOrder, [dim](const Point& p, int k) {
    const Point c{0.5, dim == 2 ? 0.5 : 0.0};
    Jet x = Jet::variable(dim, k, 0, p[0]) - c[0];
    Jet rho2 = Jet::multiply(x, x);
    if (dim == 2) {
      Jet y = Jet::variable(dim, k, 1, p[1]) - c[1];
      rho2 += Jet::multiply(y, y);
    }
    rho2 *= 1.0 / (0.4 * 0.4);
    if (rho2.value() >= 1.0 - 1e-12) return Jet(dim, k);
    Jet denom = -rho2 + 1.0;
    return jexp(-jinv(denom) + 1.0);
  });
}

FunctionSample catalog_function(const std::string& id, int dim) {
  if (id == "poly2") return fs_poly2(dim);
  if (id == "trig") return fs_trig(dim);
  if (id == "bump") return fs_bump(dim);
  throw std::invalid_argument("unknown problem id: " + id);
}

}  // namespace samplab
