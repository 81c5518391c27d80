#include "samplab/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace samplab {

namespace {

bool near_integer(double v, double tol = 1e-9) {
  return std::abs(v - std::round(v)) <= tol;
}

void check_exponent(double q, const char* name) {
  if (!(q >= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [1, inf]");
}

}  // namespace

SobolevOrder::SobolevOrder(double l_, double q_) : l(l_), q(q_) {
  if (l < 0.0) throw std::invalid_argument("order must be nonnegative");
  check_exponent(q, "q");
}

double correction_factor(const SobolevOrder& order) {
  if (order.is_integer() || order.q == kInf) return 1.0;
  return std::pow(order.ceil_defect(), -1.0 / order.q);
}

SamplingParameters::SamplingParameters(double r_, int mu_, double p_,
                                       double q_, double kappa_, int dim_)
    : r(r_), mu(mu_), p(p_), q(q_), kappa(kappa_), dim(dim_) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  check_exponent(kappa, "kappa");
  if (mu < 0) throw std::invalid_argument("mu must be nonnegative");
  const double rm = r - mu;
  if (p == 1.0) {
    if (!(rm >= dim)) throw std::invalid_argument("need r - mu >= n for p = 1");
  } else if (p == kInf) {
    if (!(near_integer(rm) && rm >= 1.0 - 1e-9))
      throw std::invalid_argument("need r - mu a positive integer for p = inf");
  } else {
    if (!(rm > dim / p))
      throw std::invalid_argument("need r - mu > n/p for 1 < p < inf");
  }
}

double SamplingParameters::l0(int n) const {
  const double inv_p = p == kInf ? 0.0 : 1.0 / p;
  const double inv_q = q == kInf ? 0.0 : 1.0 / q;
  return r - mu - n * std::max(inv_p - inv_q, 0.0);
}

double admissible_lmax(const SamplingParameters& params, int n) {
  const double l0 = params.l0(n);
  const bool r_positive_integer = near_integer(params.r) && params.r >= 1.0 - 1e-9;
  const bool cond_i =
      params.p < params.q && params.q < kInf && near_integer(l0);
  const bool cond_ii = params.p == 1.0 && params.q == kInf;
  const bool cond_iii = params.p >= params.q;
  if (r_positive_integer && (cond_i || cond_ii || cond_iii)) return l0;
  return std::ceil(l0 - 1e-12) - 1.0;
}

bool fractional_order_admissible(const SamplingParameters& params) {
  return params.p <= params.q;
}

namespace {

double accumulate_seminorm(const IntegrationRule& rule,
                           const FunctionSample& u, int m, double q) {
  const auto alphas = multi_indices_of_order(u.dim(), m);
  if (q == kInf) {
    double sup = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Jet J = u.jet(rule.x[i], m);
      for (const auto& a : alphas)
        sup = std::max(sup, std::abs(J.derivative(a)));
    }
    return sup;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Jet J = u.jet(rule.x[i], m);
    double s = 0.0;
    for (const auto& a : alphas) s += std::pow(std::abs(J.derivative(a)), q);
    acc += rule.w[i] * s;
  }
  return std::pow(acc, 1.0 / q);
}

struct PairAccumulator {
  double q;
  double sigma;
  int n_exponent;  // intrinsic dimension in the kernel |x-y|^{n + sigma q}
  double acc = 0.0;
  double sup = 0.0;

  void add(double wx, double wy, double distance, double diff_q_sum,
           double abs_diff_max) {
    if (q == kInf) {
      sup = std::max(sup, abs_diff_max / std::pow(distance, sigma));
    } else {
      acc += wx * wy * diff_q_sum /
             std::pow(distance, n_exponent + sigma * q);
    }
  }
};

}  // namespace

double integer_seminorm(const FunctionSample& u, int m, double q,
                        const Domain& dom, const QuadratureSpec& quad) {
  check_exponent(q, "q");
  if (m > u.max_jet_order()) throw std::invalid_argument("jet order exceeded");
  return accumulate_seminorm(interior_rule(dom, quad), u, m, q);
}

double gagliardo_seminorm(const FunctionSample& u, const SobolevOrder& order,
                          const Domain& dom, const QuadratureSpec& quad) {
  const double sigma = order.sigma();
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("not fractional");
  const int m = order.floor_order();
  if (m > u.max_jet_order()) throw std::invalid_argument("jet order exceeded");
  const auto alphas = multi_indices_of_order(u.dim(), m);
  const double cut_abs = quad.cut * dom.diameter();

  QuadratureSpec outer_spec = quad;
  outer_spec.cells =
      dom.dim() == 1 ? quad.pair_outer_cells : quad.pair_outer_cells_2d;
  outer_spec.gauss = quad.pair_gauss;
  const IntegrationRule outer = interior_rule(dom, outer_spec);

  const std::size_t inner_estimate =
      dom.dim() == 1
          ? std::size_t(2) * quad.pair_layers * quad.pair_gauss
          : std::size_t(quad.pair_layers) * quad.pair_gauss * quad.pair_theta;
  if (outer.size() * inner_estimate > quad.max_pairs)
    throw std::invalid_argument(
        "quadrature budget exceeded: need " +
        std::to_string(outer.size() * inner_estimate) + " pairs");

  PairAccumulator pa{order.q, sigma, dom.dim()};
  std::vector<double> ys, ws;
  IntegrationRule inner;
  std::vector<Jet> x_jets(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i)
    x_jets[i] = u.jet(outer.x[i], m);

  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Point& x = outer.x[i];
    const Jet& Jx = x_jets[i];
    auto add_pair = [&](const Point& y, double wy) {
      const Jet Jy = u.jet(y, m);
      double dq = 0.0, dmax = 0.0;
      for (const auto& a : alphas) {
        const double d = std::abs(Jx.derivative(a) - Jy.derivative(a));
        dmax = std::max(dmax, d);
        if (order.q != kInf) dq += std::pow(d, order.q);
      }
      pa.add(outer.w[i], wy, dist(x, y), dq, dmax);
    };
    if (dom.dim() == 1) {
      graded_inner_rule_1d(dom.lo(0), dom.hi(0), x[0], cut_abs,
                           quad.pair_layers, quad.pair_gauss, ys, ws);
      for (std::size_t j = 0; j < ys.size(); ++j)
        add_pair({ys[j], 0.0}, ws[j]);
    } else {
      graded_inner_rule_2d(dom, x, cut_abs, quad, inner);
      for (std::size_t j = 0; j < inner.size(); ++j)
        add_pair(inner.x[j], inner.w[j]);
    }
  }
  return order.q == kInf ? pa.sup : std::pow(pa.acc, 1.0 / order.q);
}

double sobolev_norm(const FunctionSample& u, const SobolevOrder& order,
                    const Domain& dom, const QuadratureSpec& quad) {
  const int top = order.floor_order();
  if (order.q == kInf) {
    double sup = 0.0;
    for (int m = 0; m <= top; ++m)
      sup = std::max(sup, integer_seminorm(u, m, kInf, dom, quad));
    if (order.sigma() > 0.0)
      sup = std::max(sup, gagliardo_seminorm(u, order, dom, quad));
    return sup;
  }
  double acc = 0.0;
  for (int m = 0; m <= top; ++m)
    acc += std::pow(integer_seminorm(u, m, order.q, dom, quad), order.q);
  if (order.sigma() > 0.0)
    acc += std::pow(gagliardo_seminorm(u, order, dom, quad), order.q);
  return std::pow(acc, 1.0 / order.q);
}

double piece_integer_seminorm(const FunctionSample& u1d, int m, double q,
                              const BoundaryPiece& piece,
                              const QuadratureSpec& quad) {
  if (piece.dim == 1) {
    // 0-dimensional component: only the value survives.
    return m == 0 ? std::abs(u1d.value({0.0, 0.0})) : 0.0;
  }
  return accumulate_seminorm(piece_rule(piece, quad), u1d, m, q);
}

double piece_gagliardo_seminorm(const FunctionSample& u1d,
                                const SobolevOrder& order,
                                const BoundaryPiece& piece,
                                const QuadratureSpec& quad) {
  if (piece.dim == 1) return 0.0;
  const double sigma = order.sigma();
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("not fractional");
  const int m = order.floor_order();
  const double cut_abs = quad.cut * piece.length;

  const IntegrationRule outer =
      interval_rule(0.0, piece.length, quad.pair_outer_cells, quad.pair_gauss);
  PairAccumulator pa{order.q, sigma, 1};
  std::vector<double> ys, ws;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double t = outer.x[i][0];
    const Jet Jx = u1d.jet({t, 0.0}, m);
    graded_inner_rule_1d(0.0, piece.length, t, cut_abs, quad.pair_layers,
                         quad.pair_gauss, ys, ws);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Jet Jy = u1d.jet({ys[j], 0.0}, m);
      const double d = std::abs(Jx.derivative({m, 0}) - Jy.derivative({m, 0}));
      pa.add(outer.w[i], ws[j], std::abs(t - ys[j]),
             order.q == kInf ? 0.0 : std::pow(d, order.q), d);
    }
  }
  return order.q == kInf ? pa.sup : std::pow(pa.acc, 1.0 / order.q);
}

double piece_sobolev_norm(const FunctionSample& u1d, const SobolevOrder& order,
                          const BoundaryPiece& piece,
                          const QuadratureSpec& quad) {
  const int top = order.floor_order();
  if (order.q == kInf) {
    double sup = 0.0;
    for (int m = 0; m <= top; ++m)
      sup = std::max(sup, piece_integer_seminorm(u1d, m, kInf, piece, quad));
    if (order.sigma() > 0.0)
      sup = std::max(sup, piece_gagliardo_seminorm(u1d, order, piece, quad));
    return sup;
  }
  double acc = 0.0;
  for (int m = 0; m <= top; ++m)
    acc += std::pow(piece_integer_seminorm(u1d, m, order.q, piece, quad),
                    order.q);
  if (order.sigma() > 0.0)
    acc += std::pow(piece_gagliardo_seminorm(u1d, order, piece, quad), order.q);
  return std::pow(acc, 1.0 / order.q);
}

double sample_norm(const FunctionSample& u, int mu, const PointSet& A,
                   double kappa) {
  const auto alphas = multi_indices(u.dim(), mu);
  if (kappa == kInf) {
    double sup = 0.0;
    for (const auto& p : A.nodes) {
      const Jet J = u.jet(p, mu);
      for (const auto& a : alphas)
        sup = std::max(sup, std::abs(J.derivative(a)));
    }
    return sup;
  }
  double acc = 0.0;
  for (const auto& p : A.nodes) {
    const Jet J = u.jet(p, mu);
    for (const auto& a : alphas)
      acc += std::pow(std::abs(J.derivative(a)), kappa);
  }
  return std::pow(acc, 1.0 / kappa);
}

}  // namespace samplab
