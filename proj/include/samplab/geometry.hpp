#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "samplab/jet.hpp"

namespace samplab {

using Point = std::array<double, 2>;

inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1]};
}
inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1];
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }

enum class Component { Interior = 1, Dirichlet = 2, Neumann = 3 };
enum class BoundaryCondition { Dirichlet, Neumann };
enum class RegionKind { Interval, Square, Disk };
enum class PointStrategy { UniformGrid, Halton, JitteredGrid };

PointStrategy parse_strategy(const std::string& name);

/// One boundary face/arc: an endpoint in 1D, a straight edge or circular
/// arc in 2D.  2D pieces are parametrized by arc length t in [0, length].
struct BoundaryPiece {
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int dim = 1;  // ambient dimension
  double length = 0.0;

  // 1D endpoint
  Point endpoint{0.0, 0.0};
  double normal_sign = 1.0;

  // 2D straight edge: x(t) = start + t * tangent
  bool is_arc = false;
  Point start{0.0, 0.0};
  Point tangent_dir{1.0, 0.0};
  Point outward{0.0, -1.0};

  // 2D circular arc on |x - center| = radius, theta = theta0 + t / radius
  Point center{0.0, 0.0};
  double radius = 1.0;
  double theta0 = 0.0;

  Point at(double t) const;
  Point tangent(double t) const;
  Point outward_normal(double t) const;
  /// 1D jets of the coordinate functions t -> x(t), y(t), for composing
  /// ambient derivative jets into tangential ones.
  std::array<Jet, 2> curve_jets(double t, int order) const;
};

/// A computational region with its Dirichlet/Neumann boundary partition.
/// The descriptor set is {unit interval, unit square, ball B(x0,r)}; a
/// ball with dim == 1 is the interval (x0-r, x0+r).
class Domain {
 public:
  static Domain interval(BoundaryCondition left = BoundaryCondition::Dirichlet,
                         BoundaryCondition right = BoundaryCondition::Neumann);
  /// Edge order: bottom (y=0), right (x=1), top (y=1), left (x=0).
  static Domain unit_square(const std::array<BoundaryCondition, 4>& edges = {
      BoundaryCondition::Dirichlet, BoundaryCondition::Neumann,
      BoundaryCondition::Dirichlet, BoundaryCondition::Dirichlet});
  static Domain ball(int dim, const Point& center, double radius,
                     double neumann_arc_fraction = 0.0);

  int dim() const { return dim_; }
  RegionKind kind() const { return kind_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double diameter() const;
  double volume() const;

  bool contains(const Point& p, double tol = 1e-12) const;
  bool on_component(Component k, const Point& p, double tol = 1e-9) const;

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  std::vector<const BoundaryPiece*> pieces_of(Component k) const;

 private:
  int dim_ = 1;
  RegionKind kind_ = RegionKind::Interval;
  Point center_{0.0, 0.0};
  double radius_ = 0.0;
  Point lo_{0.0, 0.0};  // bounding box
  Point hi_{1.0, 0.0};
  std::vector<BoundaryPiece> pieces_;
};

/// Scattered nodes on one domain component with cached mesh metrics.
struct PointSet {
  Component component = Component::Interior;
  std::vector<Point> nodes;
  // Boundary sets carry the generating piece and arc-length parameter.
  std::vector<int> piece;
  std::vector<double> param;

  double fill = 0.0;
  double separation = 0.0;
  double mesh_ratio = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// Fill distance sup_{x in component} min_{a in A} |x - a| estimated on a
/// deterministic dense probe grid; the result is a lower bound whose
/// defect is at most one probe spacing.
double fill_distance(const PointSet& A, const Domain& dom, int resolution);

/// Half the minimum pairwise distance.
double separation_distance(const PointSet& A);

PointSet generate_point_set(const Domain& dom, Component component,
                            double target_d, PointStrategy strategy,
                            std::uint64_t seed);

void write_pointset_csv(const std::string& path, const PointSet& ps, int dim);

}  // namespace samplab
