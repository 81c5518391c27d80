#include "samplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace samplab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>>
      cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double p0, p1, dp;
      for (int iter = 0; iter < 100; ++iter) {
        p0 = 1.0;
        p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      x[n - 1 - i] = t;
      w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

IntegrationRule interval_rule(double a, double b, int cells, int gauss) {
  std::vector<double> gx, gw;
  gauss_legendre(gauss, gx, gw);
  IntegrationRule rule;
  rule.x.reserve(std::size_t(cells) * gauss);
  rule.w.reserve(std::size_t(cells) * gauss);
  const double h = (b - a) / cells;
  for (int c = 0; c < cells; ++c) {
    const double mid = a + h * (c + 0.5);
    for (int g = 0; g < gauss; ++g) {
      rule.x.push_back({mid + 0.5 * h * gx[g], 0.0});
      rule.w.push_back(0.5 * h * gw[g]);
    }
  }
  return rule;
}

IntegrationRule interior_rule(const Domain& dom, const QuadratureSpec& spec) {
  if (dom.dim() == 1) return interval_rule(dom.lo(0), dom.hi(0), spec.cells, spec.gauss);
  IntegrationRule rule;
  std::vector<double> gx, gw;
  gauss_legendre(spec.gauss, gx, gw);
  if (dom.kind() == RegionKind::Square) {
    const double h = 1.0 / spec.cells;
    for (int cx = 0; cx < spec.cells; ++cx) {
      for (int g1 = 0; g1 < spec.gauss; ++g1) {
        const double x = h * (cx + 0.5) + 0.5 * h * gx[g1];
        const double wx = 0.5 * h * gw[g1];
        for (int cy = 0; cy < spec.cells; ++cy) {
          for (int g2 = 0; g2 < spec.gauss; ++g2) {
            const double y = h * (cy + 0.5) + 0.5 * h * gx[g2];
            rule.x.push_back({x, y});
            rule.w.push_back(wx * 0.5 * h * gw[g2]);
          }
        }
      }
    }
    return rule;
  }
  // Disk in polar coordinates; Jacobian rho.
  const double R = dom.radius();
  const auto rad = interval_rule(0.0, R, spec.cells, spec.gauss);
  const auto ang = interval_rule(0.0, 2.0 * kPi, spec.cells, spec.gauss);
  for (std::size_t i = 0; i < rad.size(); ++i) {
    const double rho = rad.x[i][0];
    for (std::size_t j = 0; j < ang.size(); ++j) {
      const double th = ang.x[j][0];
      rule.x.push_back({dom.center()[0] + rho * std::cos(th),
                        dom.center()[1] + rho * std::sin(th)});
      rule.w.push_back(rad.w[i] * ang.w[j] * rho);
    }
  }
  return rule;
}

IntegrationRule piece_rule(const BoundaryPiece& piece,
                           const QuadratureSpec& spec) {
  if (piece.dim == 1) {
    IntegrationRule rule;
    rule.x.push_back({0.0, 0.0});
    rule.w.push_back(1.0);
    return rule;
  }
  return interval_rule(0.0, piece.length, spec.cells, spec.gauss);
}

void graded_inner_rule_1d(double a, double b, double x, double cut_abs,
                          int layers, int gauss, std::vector<double>& ys,
                          std::vector<double>& ws) {
  ys.clear();
  ws.clear();
  std::vector<double> gx, gw;
  gauss_legendre(gauss, gx, gw);
  for (int side = 0; side < 2; ++side) {
    const double L = side == 0 ? x - a : b - x;
    if (L <= cut_abs) continue;
    const double beta = std::pow(cut_abs / L, 1.0 / layers);
    double outer = L;
    for (int j = 0; j < layers; ++j) {
      const double inner = j + 1 == layers ? cut_abs : outer * beta;
      const double h = outer - inner;
      const double mid = inner + 0.5 * h;
      for (int g = 0; g < gauss; ++g) {
        const double t = mid + 0.5 * h * gx[g];
        ys.push_back(side == 0 ? x - t : x + t);
        ws.push_back(0.5 * h * gw[g]);
      }
      outer = inner;
    }
  }
}

namespace {

using ArcList = std::vector<std::pair<double, double>>;

/// Intersect lists of non-wrapping angular intervals within [0, 2pi].
ArcList intersect_arcs(const ArcList& a, const ArcList& b) {
  ArcList out;
  for (const auto& [a0, a1] : a) {
    for (const auto& [b0, b1] : b) {
      const double lo = std::max(a0, b0);
      const double hi = std::min(a1, b1);
      if (hi > lo + 1e-14) out.push_back({lo, hi});
    }
  }
  return out;
}

/// Angular set where cos(theta - phase) <= c, as non-wrapping intervals.
ArcList cos_below(double phase, double c) {
  if (c >= 1.0) return {{0.0, 2.0 * kPi}};
  if (c <= -1.0) return {};
  const double ac = std::acos(c);
  // theta - phase in [ac, 2pi - ac]  (mod 2pi)
  ArcList out;
  double lo = phase + ac, hi = phase + 2.0 * kPi - ac;
  // Normalize start into [0, 2pi).
  while (lo < 0.0) {
    lo += 2.0 * kPi;
    hi += 2.0 * kPi;
  }
  while (lo >= 2.0 * kPi) {
    lo -= 2.0 * kPi;
    hi -= 2.0 * kPi;
  }
  if (hi <= 2.0 * kPi) {
    out.push_back({lo, hi});
  } else {
    out.push_back({lo, 2.0 * kPi});
    out.push_back({0.0, hi - 2.0 * kPi});
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> circle_arcs_inside(const Domain& dom,
                                                          const Point& x,
                                                          double rho) {
  ArcList arcs{{0.0, 2.0 * kPi}};
  if (dom.kind() == RegionKind::Disk) {
    const Point d = x - dom.center();
    const double dc = norm(d);
    const double R = dom.radius();
    if (dc + rho <= R) return arcs;          // fully inside
    if (rho >= dc + R || dc - rho >= R) return {};  // fully outside
    // |x - c + rho e|^2 <= R^2  <=>  cos(theta - phi) <= (R^2 - dc^2 - rho^2) / (2 rho dc)
    const double c = (R * R - dc * dc - rho * rho) / (2.0 * rho * dc);
    const double phi = std::atan2(d[1], d[0]);
    return cos_below(phi, c);
  }
  // Square: intersect four half-plane constraints.
  // x0 + rho cos t >= 0  <=>  cos(t - pi) <= x0 / rho
  arcs = intersect_arcs(arcs, cos_below(kPi, x[0] / rho));
  // x0 + rho cos t <= 1  <=>  cos t <= (1 - x0) / rho
  arcs = intersect_arcs(arcs, cos_below(0.0, (1.0 - x[0]) / rho));
  // x1 + rho sin t >= 0  <=>  cos(t + pi/2) <= x1 / rho
  arcs = intersect_arcs(arcs, cos_below(-kPi / 2.0, x[1] / rho));
  // x1 + rho sin t <= 1  <=>  cos(t - pi/2) <= (1 - x1) / rho
  arcs = intersect_arcs(arcs, cos_below(kPi / 2.0, (1.0 - x[1]) / rho));
  return arcs;
}

void graded_inner_rule_2d(const Domain& dom, const Point& x, double cut_abs,
                          const QuadratureSpec& spec, IntegrationRule& out) {
  out.x.clear();
  out.w.clear();
  std::vector<double> gx, gw;
  gauss_legendre(spec.pair_gauss, gx, gw);
  std::vector<double> tx, tw;
  gauss_legendre(std::max(2, spec.pair_gauss), tx, tw);
  const double D = dom.diameter();
  if (D <= cut_abs) return;
  const double beta = std::pow(cut_abs / D, 1.0 / spec.pair_layers);
  double outer = D;
  for (int j = 0; j < spec.pair_layers; ++j) {
    const double inner = j + 1 == spec.pair_layers ? cut_abs : outer * beta;
    const double h = outer - inner;
    for (int g = 0; g < spec.pair_gauss; ++g) {
      const double rho = inner + 0.5 * h + 0.5 * h * gx[g];
      const double wr = 0.5 * h * gw[g] * rho;  // polar Jacobian
      for (const auto& [t0, t1] : circle_arcs_inside(dom, x, rho)) {
        const double arc = t1 - t0;
        const int nseg = std::max(
            1, static_cast<int>(std::ceil(arc / (2.0 * kPi) * spec.pair_theta /
                                          tx.size())));
        for (int s = 0; s < nseg; ++s) {
          const double sa = t0 + arc * s / nseg;
          const double sh = arc / nseg;
          for (std::size_t g2 = 0; g2 < tx.size(); ++g2) {
            const double th = sa + 0.5 * sh + 0.5 * sh * tx[g2];
            out.x.push_back({x[0] + rho * std::cos(th), x[1] + rho * std::sin(th)});
            out.w.push_back(wr * 0.5 * sh * tw[g2]);
          }
        }
      }
    }
    outer = inner;
  }
}

}  // namespace samplab
