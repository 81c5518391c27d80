#include "samplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "samplab/rng.hpp"

namespace samplab {

namespace {

constexpr std::size_t kNodeBudget = 500000;
constexpr double kPi = std::numbers::pi;

}  // namespace

PointStrategy parse_strategy(const std::string& name) {
  if (name == "uniform-grid") return PointStrategy::UniformGrid;
  if (name == "halton") return PointStrategy::Halton;
  if (name == "jittered-grid") return PointStrategy::JitteredGrid;
  throw std::invalid_argument("unknown point strategy: " + name);
}

Point BoundaryPiece::at(double t) const {
  if (dim == 1) return endpoint;
  if (!is_arc)
    return {start[0] + t * tangent_dir[0], start[1] + t * tangent_dir[1]};
  const double th = theta0 + t / radius;
  return {center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)};
}

Point BoundaryPiece::tangent(double t) const {
  if (dim == 1) return {normal_sign, 0.0};
  if (!is_arc) return tangent_dir;
  const double th = theta0 + t / radius;
  return {-std::sin(th), std::cos(th)};
}

Point BoundaryPiece::outward_normal(double t) const {
  if (dim == 1) return {normal_sign, 0.0};
  if (!is_arc) return outward;
  const double th = theta0 + t / radius;
  return {std::cos(th), std::sin(th)};
}

std::array<Jet, 2> BoundaryPiece::curve_jets(double t, int order) const {
  if (dim == 1)
    return {Jet::constant(1, order, endpoint[0]), Jet::constant(1, order, 0.0)};
  if (!is_arc) {
    Jet s = Jet::variable(1, order, 0, t);
    return {Jet::constant(1, order, start[0]) + s * tangent_dir[0],
            Jet::constant(1, order, start[1]) + s * tangent_dir[1]};
  }
  Jet th = Jet::variable(1, order, 0, t) * (1.0 / radius) + theta0;
  return {Jet::constant(1, order, center[0]) + jcos(th) * radius,
          Jet::constant(1, order, center[1]) + jsin(th) * radius};
}

Domain Domain::interval(BoundaryCondition left, BoundaryCondition right) {
  Domain d;
  d.dim_ = 1;
  d.kind_ = RegionKind::Interval;
  d.lo_ = {0.0, 0.0};
  d.hi_ = {1.0, 0.0};
  BoundaryPiece l;
  l.dim = 1;
  l.bc = left;
  l.endpoint = {0.0, 0.0};
  l.normal_sign = -1.0;
  BoundaryPiece r;
  r.dim = 1;
  r.bc = right;
  r.endpoint = {1.0, 0.0};
  r.normal_sign = 1.0;
  d.pieces_ = {l, r};
  if (d.pieces_of(Component::Dirichlet).empty())
    throw std::invalid_argument("Dirichlet part must be nonempty");
  return d;
}

Domain Domain::unit_square(const std::array<BoundaryCondition, 4>& edges) {
  Domain d;
  d.dim_ = 2;
  d.kind_ = RegionKind::Square;
  d.lo_ = {0.0, 0.0};
  d.hi_ = {1.0, 1.0};
  const Point starts[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Point tangents[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Point normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  for (int e = 0; e < 4; ++e) {
    BoundaryPiece p;
    p.dim = 2;
    p.bc = edges[e];
    p.length = 1.0;
    p.start = starts[e];
    p.tangent_dir = tangents[e];
    p.outward = normals[e];
    d.pieces_.push_back(p);
  }
  if (d.pieces_of(Component::Dirichlet).empty())
    throw std::invalid_argument("Dirichlet part must be nonempty");
  return d;
}

Domain Domain::ball(int dim, const Point& center, double radius,
                    double neumann_arc_fraction) {
  if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
  Domain d;
  d.dim_ = dim;
  d.kind_ = RegionKind::Disk;
  d.center_ = center;
  d.radius_ = radius;
  if (dim == 1) {
    d.lo_ = {center[0] - radius, 0.0};
    d.hi_ = {center[0] + radius, 0.0};
    BoundaryPiece l;
    l.dim = 1;
    l.bc = BoundaryCondition::Dirichlet;
    l.endpoint = {center[0] - radius, 0.0};
    l.normal_sign = -1.0;
    BoundaryPiece r;
    r.dim = 1;
    r.bc = neumann_arc_fraction > 0.0 ? BoundaryCondition::Neumann
                                      : BoundaryCondition::Dirichlet;
    r.endpoint = {center[0] + radius, 0.0};
    r.normal_sign = 1.0;
    d.pieces_ = {l, r};
    return d;
  }
  d.lo_ = {center[0] - radius, center[1] - radius};
  d.hi_ = {center[0] + radius, center[1] + radius};
  const double dir_frac = 1.0 - neumann_arc_fraction;
  BoundaryPiece a;
  a.dim = 2;
  a.bc = BoundaryCondition::Dirichlet;
  a.is_arc = true;
  a.center = center;
  a.radius = radius;
  a.theta0 = 0.0;
  a.length = 2.0 * kPi * radius * dir_frac;
  d.pieces_.push_back(a);
  if (neumann_arc_fraction > 0.0) {
    BoundaryPiece b;
    b.dim = 2;
    b.bc = BoundaryCondition::Neumann;
    b.is_arc = true;
    b.center = center;
    b.radius = radius;
    b.theta0 = 2.0 * kPi * dir_frac;
    b.length = 2.0 * kPi * radius * neumann_arc_fraction;
    d.pieces_.push_back(b);
  }
  return d;
}

double Domain::diameter() const {
  if (kind_ == RegionKind::Disk) return 2.0 * radius_;
  if (dim_ == 1) return hi_[0] - lo_[0];
  return std::sqrt(2.0);
}

double Domain::volume() const {
  switch (kind_) {
    case RegionKind::Interval:
      return hi_[0] - lo_[0];
    case RegionKind::Square:
      return 1.0;
    case RegionKind::Disk:
      return dim_ == 1 ? 2.0 * radius_ : kPi * radius_ * radius_;
  }
  return 0.0;
}

bool Domain::contains(const Point& p, double tol) const {
  if (kind_ == RegionKind::Disk)
    return dist(p, center_) <= radius_ + tol &&
           (dim_ == 2 || std::abs(p[1]) <= tol);
  for (int i = 0; i < dim_; ++i)
    if (p[i] < lo_[i] - tol || p[i] > hi_[i] + tol) return false;
  return dim_ == 2 || std::abs(p[1]) <= tol;
}

bool Domain::on_component(Component k, const Point& p, double tol) const {
  if (k == Component::Interior) return contains(p, tol);
  const auto bc = k == Component::Dirichlet ? BoundaryCondition::Dirichlet
                                            : BoundaryCondition::Neumann;
  for (const auto& piece : pieces_) {
    if (piece.bc != bc) continue;
    if (piece.dim == 1) {
      if (dist(p, piece.endpoint) <= tol) return true;
      continue;
    }
    if (!piece.is_arc) {
      const Point d = p - piece.start;
      const double t = dot(d, piece.tangent_dir);
      if (t < -tol || t > piece.length + tol) continue;
      if (dist(p, piece.at(std::clamp(t, 0.0, piece.length))) <= tol)
        return true;
    } else {
      if (std::abs(dist(p, piece.center) - piece.radius) > tol) continue;
      double th = std::atan2(p[1] - piece.center[1], p[0] - piece.center[0]);
      double rel = th - piece.theta0;
      while (rel < 0.0) rel += 2.0 * kPi;
      const double span = piece.length / piece.radius;
      if (rel <= span + tol / piece.radius) return true;
    }
  }
  return false;
}

std::vector<const BoundaryPiece*> Domain::pieces_of(Component k) const {
  const auto bc = k == Component::Neumann ? BoundaryCondition::Neumann
                                          : BoundaryCondition::Dirichlet;
  std::vector<const BoundaryPiece*> out;
  for (const auto& p : pieces_)
    if (p.bc == bc) out.push_back(&p);
  return out;
}

namespace {

/// Nearest-node distance queries: sorted scan in 1D, uniform buckets in 2D.
class NearestSearch {
 public:
  NearestSearch(const std::vector<Point>& pts, int dim) : dim_(dim) {
    if (dim_ == 1) {
      xs_.reserve(pts.size());
      for (const auto& p : pts) xs_.push_back(p[0]);
      std::sort(xs_.begin(), xs_.end());
      return;
    }
    lo_ = hi_ = pts[0];
    for (const auto& p : pts) {
      for (int i = 0; i < 2; ++i) {
        lo_[i] = std::min(lo_[i], p[i]);
        hi_[i] = std::max(hi_[i], p[i]);
      }
    }
    const int target = static_cast<int>(std::sqrt(double(pts.size()))) + 1;
    nx_ = std::clamp(target, 1, 512);
    ny_ = nx_;
    cw_[0] = std::max((hi_[0] - lo_[0]) / nx_, 1e-300);
    cw_[1] = std::max((hi_[1] - lo_[1]) / ny_, 1e-300);
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (const auto& p : pts) cells_[cell_of(p)].push_back(p);
  }

  double nearest(const Point& q) const {
    if (dim_ == 1) {
      auto it = std::lower_bound(xs_.begin(), xs_.end(), q[0]);
      double best = std::numeric_limits<double>::infinity();
      if (it != xs_.end()) best = std::min(best, *it - q[0]);
      if (it != xs_.begin()) best = std::min(best, q[0] - *(it - 1));
      return best;
    }
    const int cx = clampi(static_cast<int>((q[0] - lo_[0]) / cw_[0]), nx_);
    const int cy = clampi(static_cast<int>((q[1] - lo_[1]) / cw_[1]), ny_);
    double best = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      if (ring > 0) {
        const double ring_dist = (ring - 1) * std::min(cw_[0], cw_[1]);
        if (best < ring_dist) break;
      }
      for (int ix = cx - ring; ix <= cx + ring; ++ix) {
        if (ix < 0 || ix >= nx_) continue;
        for (int iy = cy - ring; iy <= cy + ring; ++iy) {
          if (iy < 0 || iy >= ny_) continue;
          if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
          for (const auto& p : cells_[std::size_t(iy) * nx_ + ix])
            best = std::min(best, dist(p, q));
        }
      }
    }
    return best;
  }

 private:
  static int clampi(int v, int n) { return std::clamp(v, 0, n - 1); }
  std::size_t cell_of(const Point& p) const {
    const int cx = clampi(static_cast<int>((p[0] - lo_[0]) / cw_[0]), nx_);
    const int cy = clampi(static_cast<int>((p[1] - lo_[1]) / cw_[1]), ny_);
    return std::size_t(cy) * nx_ + cx;
  }

  int dim_;
  std::vector<double> xs_;
  Point lo_{0, 0}, hi_{0, 0};
  double cw_[2] = {1, 1};
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<Point>> cells_;
};

std::vector<Point> probe_points(const Domain& dom, Component comp,
                                int resolution) {
  std::vector<Point> probes;
  if (comp == Component::Interior) {
    if (dom.dim() == 1) {
      const double a = dom.lo(0), b = dom.hi(0);
      probes.reserve(resolution + 1);
      for (int i = 0; i <= resolution; ++i)
        probes.push_back({a + (b - a) * i / resolution, 0.0});
      return probes;
    }
    const int n = resolution;
    probes.reserve(std::size_t(n + 1) * (n + 1));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        Point p{dom.lo(0) + (dom.hi(0) - dom.lo(0)) * i / n,
                dom.lo(1) + (dom.hi(1) - dom.lo(1)) * j / n};
        if (dom.contains(p)) probes.push_back(p);
      }
    }
    if (dom.kind() == RegionKind::Disk) {
      const int m = 4 * resolution;
      for (int i = 0; i < m; ++i) {
        const double th = 2.0 * kPi * i / m;
        probes.push_back({dom.center()[0] + dom.radius() * std::cos(th),
                          dom.center()[1] + dom.radius() * std::sin(th)});
      }
    }
    return probes;
  }
  const auto pieces = dom.pieces_of(comp);
  for (const auto* p : pieces) {
    if (p->dim == 1) {
      probes.push_back(p->endpoint);
      continue;
    }
    const int m = std::max(resolution, 2);
    for (int i = 0; i <= m; ++i) probes.push_back(p->at(p->length * i / m));
  }
  return probes;
}

bool is_zero_dimensional(const Domain& dom, Component comp) {
  return dom.dim() == 1 && comp != Component::Interior;
}

}  // namespace

double fill_distance(const PointSet& A, const Domain& dom, int resolution) {
  if (A.nodes.empty()) throw std::invalid_argument("empty sample set");
  for (const auto& p : A.nodes) {
    const bool ok = A.component == Component::Interior
                        ? dom.contains(p, 1e-9)
                        : dom.on_component(A.component, p, 1e-9);
    if (!ok) throw std::invalid_argument("node outside domain");
  }
  if (is_zero_dimensional(dom, A.component)) return 0.0;
  const auto probes = probe_points(dom, A.component, resolution);
  NearestSearch search(A.nodes, dom.dim());
  double sup = 0.0;
  for (const auto& q : probes) sup = std::max(sup, search.nearest(q));
  return sup;
}

double separation_distance(const PointSet& A) {
  if (A.nodes.size() < 2) throw std::invalid_argument("degenerate set");
  double mind = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < A.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < A.nodes.size(); ++j)
      mind = std::min(mind, dist(A.nodes[i], A.nodes[j]));
  return 0.5 * mind;
}

namespace {

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

void check_budget(std::size_t count) {
  if (count > kNodeBudget)
    throw std::invalid_argument("budget exceeded: need " +
                                std::to_string(count) + " nodes");
}

void append_interior_grid(const Domain& dom, double target, PointSet& ps,
                          Rng* jitter) {
  if (dom.dim() == 1) {
    const double a = dom.lo(0), b = dom.hi(0);
    const int m = std::max<int>(1, static_cast<int>(
                                       std::ceil((b - a) / (2.0 * target))));
    check_budget(std::size_t(m) + 1);
    const double g = (b - a) / m;
    for (int i = 0; i <= m; ++i) {
      double x = a + g * i;
      if (jitter && i > 0 && i < m) x += jitter->uniform(-0.25 * g, 0.25 * g);
      ps.nodes.push_back({x, 0.0});
    }
    return;
  }
  if (dom.kind() == RegionKind::Square) {
    const int m = std::max<int>(
        1, static_cast<int>(std::ceil(1.0 / (std::sqrt(2.0) * target))));
    check_budget((std::size_t(m) + 1) * (m + 1));
    const double g = 1.0 / m;
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m; ++j) {
        Point p{g * i, g * j};
        if (jitter) {
          if (i > 0 && i < m) p[0] += jitter->uniform(-0.25 * g, 0.25 * g);
          if (j > 0 && j < m) p[1] += jitter->uniform(-0.25 * g, 0.25 * g);
        }
        ps.nodes.push_back(p);
      }
    }
    return;
  }
  // Disk: masked grid plus a boundary ring so the closure is covered.
  const double R = dom.radius();
  const double g = target;
  const int m = static_cast<int>(std::ceil(2.0 * R / g));
  check_budget(std::size_t(m + 1) * (m + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      Point p{dom.lo(0) + 2.0 * R * i / m, dom.lo(1) + 2.0 * R * j / m};
      if (jitter) {
        p[0] += jitter->uniform(-0.25 * g, 0.25 * g);
        p[1] += jitter->uniform(-0.25 * g, 0.25 * g);
      }
      const double d = dist(p, dom.center());
      if (d <= R * (1.0 - 1e-12)) ps.nodes.push_back(p);
    }
  }
  const int ring = std::max<int>(8, static_cast<int>(std::ceil(2 * kPi * R / g)));
  for (int i = 0; i < ring; ++i) {
    const double th = 2.0 * kPi * i / ring;
    ps.nodes.push_back({dom.center()[0] + R * std::cos(th),
                        dom.center()[1] + R * std::sin(th)});
  }
}

void append_boundary_grid(const Domain& dom, Component comp, double target,
                          PointSet& ps, Rng* jitter) {
  const auto pieces = dom.pieces();
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& piece = pieces[pi];
    const auto bc = comp == Component::Dirichlet ? BoundaryCondition::Dirichlet
                                                 : BoundaryCondition::Neumann;
    if (piece.bc != bc) continue;
    if (piece.dim == 1) {
      ps.nodes.push_back(piece.endpoint);
      ps.piece.push_back(static_cast<int>(pi));
      ps.param.push_back(0.0);
      continue;
    }
    const int m = std::max<int>(
        1, static_cast<int>(std::ceil(piece.length / (2.0 * target))));
    check_budget(ps.nodes.size() + m + 1);
    const double g = piece.length / m;
    if (comp == Component::Dirichlet) {
      // Corners live on the Dirichlet component only.
      for (int i = 0; i <= m; ++i) {
        double t = g * i;
        if (jitter && i > 0 && i < m)
          t += jitter->uniform(-0.25 * g, 0.25 * g);
        ps.nodes.push_back(piece.at(t));
        ps.piece.push_back(static_cast<int>(pi));
        ps.param.push_back(t);
      }
    } else {
      for (int i = 0; i < m; ++i) {
        double t = g * (i + 0.5);
        if (jitter) t += jitter->uniform(-0.2 * g, 0.2 * g);
        ps.nodes.push_back(piece.at(t));
        ps.piece.push_back(static_cast<int>(pi));
        ps.param.push_back(t);
      }
    }
  }
}

void append_halton(const Domain& dom, Component comp, double target,
                   std::uint64_t seed, PointSet& ps) {
  const std::uint64_t start = 17 + seed * 100003ULL;
  if (comp == Component::Interior) {
    std::size_t want =
        dom.dim() == 1
            ? static_cast<std::size_t>(std::ceil(dom.diameter() / target)) + 2
            : static_cast<std::size_t>(
                  std::ceil(4.0 * dom.volume() / (target * target))) +
                  4;
    std::uint64_t idx = start;
    while (true) {
      check_budget(want);
      ps.nodes.clear();
      idx = start;
      while (ps.nodes.size() < want) {
        Point p{0.0, 0.0};
        if (dom.dim() == 1) {
          p[0] = dom.lo(0) + (dom.hi(0) - dom.lo(0)) * radical_inverse(idx, 2);
        } else {
          p[0] = dom.lo(0) + (dom.hi(0) - dom.lo(0)) * radical_inverse(idx, 2);
          p[1] = dom.lo(1) + (dom.hi(1) - dom.lo(1)) * radical_inverse(idx, 3);
        }
        ++idx;
        if (dom.contains(p)) ps.nodes.push_back(p);
      }
      const int res = dom.dim() == 1 ? 2000 : 256;
      const double fill = fill_distance(ps, dom, res);
      if (fill <= 1.4 * target) break;
      want = want + want / 3 + 1;
    }
    return;
  }
  // Boundary: Halton in concatenated arc length.
  std::vector<std::pair<int, const BoundaryPiece*>> pieces;
  double total = 0.0;
  const auto bc = comp == Component::Dirichlet ? BoundaryCondition::Dirichlet
                                               : BoundaryCondition::Neumann;
  for (std::size_t pi = 0; pi < dom.pieces().size(); ++pi) {
    if (dom.pieces()[pi].bc != bc) continue;
    pieces.push_back({static_cast<int>(pi), &dom.pieces()[pi]});
    total += dom.pieces()[pi].length;
  }
  if (dom.dim() == 1) {
    append_boundary_grid(dom, comp, target, ps, nullptr);
    return;
  }
  std::size_t want =
      static_cast<std::size_t>(std::ceil(total / (1.2 * target))) + 2;
  while (true) {
    check_budget(want);
    ps.nodes.clear();
    ps.piece.clear();
    ps.param.clear();
    for (std::size_t i = 0; i < want; ++i) {
      double s = total * radical_inverse(start + i, 2);
      for (const auto& [pi, piece] : pieces) {
        if (s <= piece->length || &*piece == pieces.back().second) {
          const double t = std::min(s, piece->length);
          ps.nodes.push_back(piece->at(t));
          ps.piece.push_back(pi);
          ps.param.push_back(t);
          break;
        }
        s -= piece->length;
      }
    }
    const double fill = fill_distance(ps, dom, 2000);
    if (fill <= 1.4 * target) break;
    want = want + want / 3 + 1;
  }
}

}  // namespace

PointSet generate_point_set(const Domain& dom, Component component,
                            double target_d, PointStrategy strategy,
                            std::uint64_t seed) {
  if (!(target_d > 0.0)) throw std::invalid_argument("target fill must be positive");
  if (component == Component::Interior && target_d >= dom.diameter())
    throw std::invalid_argument("target fill exceeds component diameter");
  PointSet ps;
  ps.component = component;

  const bool zero_dim = is_zero_dimensional(dom, component);
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  Rng* jitter = strategy == PointStrategy::JitteredGrid ? &rng : nullptr;

  if (component == Component::Interior) {
    if (strategy == PointStrategy::Halton)
      append_halton(dom, component, target_d, seed, ps);
    else
      append_interior_grid(dom, target_d, ps, jitter);
  } else {
    if (strategy == PointStrategy::Halton && !zero_dim)
      append_halton(dom, component, target_d, seed, ps);
    else
      append_boundary_grid(dom, component, target_d, ps, jitter);
  }
  if (ps.nodes.empty()) throw std::runtime_error("component has no nodes");

  if (zero_dim) {
    ps.fill = 0.0;
    ps.separation = ps.nodes.size() >= 2 ? separation_distance(ps)
                                         : std::numeric_limits<double>::infinity();
    ps.mesh_ratio = 0.0;
    return ps;
  }
  int res;
  if (dom.dim() == 1 || component != Component::Interior)
    res = std::max(2000, static_cast<int>(8.0 * dom.diameter() / target_d));
  else
    res = std::clamp(static_cast<int>(6.0 * dom.diameter() / target_d), 128, 1600);
  ps.fill = fill_distance(ps, dom, res);
  ps.separation = ps.nodes.size() >= 2 ? separation_distance(ps)
                                       : std::numeric_limits<double>::infinity();
  ps.mesh_ratio = ps.fill / ps.separation;
  return ps;
}

void write_pointset_csv(const std::string& path, const PointSet& ps, int dim) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << (dim == 1 ? "component,x\n" : "component,x,y\n");
  char buf[64];
  for (const auto& p : ps.nodes) {
    out << static_cast<int>(ps.component);
    if (dim == 1)
      std::snprintf(buf, sizeof buf, ",%.12g", p[0]);
    else
      std::snprintf(buf, sizeof buf, ",%.12g,%.12g", p[0], p[1]);
    out << buf << "\n";
  }
}

}  // namespace samplab
