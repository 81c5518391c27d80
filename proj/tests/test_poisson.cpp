#include <cmath>

#include "doctest.h"
#include "samplab/poisson.hpp"
#include "samplab/rng.hpp"

using namespace samplab;

TEST_CASE("apply_L_component on u = x^2 + y^2") {
  const FunctionSample u = fs_poly2(2);
  const Domain sq = Domain::unit_square();
  // Interior: -Lap u = -4 everywhere.
  CHECK(apply_L_component(u, Component::Interior, {0.3, 0.7}, {0, 0}) ==
        doctest::Approx(-4.0));
  CHECK(apply_L_component(u, Component::Interior, {0.9, 0.1}, {0, 0}) ==
        doctest::Approx(-4.0));
  // Neumann on the edge x = 1 with normal (1,0): du/dx = 2x = 2.
  const BoundaryPiece& right = sq.pieces()[1];
  REQUIRE(right.bc == BoundaryCondition::Neumann);
  BoundaryFrame frame{&right, 0.5};
  CHECK(apply_L_component(u, Component::Neumann, frame, 0) ==
        doctest::Approx(2.0));
  // Dirichlet trace at (0.3, 0): 0.09.
  const BoundaryPiece& bottom = sq.pieces()[0];
  BoundaryFrame fb{&bottom, 0.3};
  CHECK(apply_L_component(u, Component::Dirichlet, fb, 0) ==
        doctest::Approx(0.09));
}

TEST_CASE("manufactured poly2 has f = -4 on the square") {
  const auto prob =
      PoissonProblem::manufactured("poly2", Domain::unit_square());
  CHECK(prob.f().value({0.25, 0.75}) == doctest::Approx(-4.0));
  CHECK(prob.f().value({0.5, 0.5}) == doctest::Approx(-4.0));
}

TEST_CASE("manufactured trig has f = 2 pi^2 sin(pi x) cos(pi y)") {
  const auto prob = PoissonProblem::manufactured("trig", Domain::unit_square());
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
    const double pi = std::acos(-1.0);
    const double expected =
        2.0 * pi * pi * std::sin(pi * p[0]) * std::cos(pi * p[1]);
    CHECK(prob.f().value(p) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("catalog problems are data-consistent at random probes") {
  Rng rng(11);
  for (const std::string id : {"poly2", "trig", "bump"}) {
    for (int dim : {1, 2}) {
      const Domain dom =
          dim == 1 ? Domain::interval() : Domain::unit_square();
      const auto prob = PoissonProblem::manufactured(id, dom);
      REQUIRE(prob.has_exact());
      for (int i = 0; i < 100; ++i) {
        Point p{rng.uniform(0.02, 0.98),
                dim == 2 ? rng.uniform(0.02, 0.98) : 0.0};
        // f + Lap u* = 0
        const Jet J = prob.exact().jet(p, 2);
        double lap = J.derivative({2, 0});
        if (dim == 2) lap += J.derivative({0, 2});
        CHECK(std::abs(prob.f().value(p) + lap) <= 1e-9);
      }
      // Boundary data match traces / normal derivatives.
      for (const auto& piece : dom.pieces()) {
        const FunctionSample data = prob.boundary_data(piece);
        for (int i = 0; i < 10; ++i) {
          const double t = piece.dim == 1 ? 0.0 : rng.uniform(0.0, piece.length);
          const Point x = piece.at(t);
          double expected;
          if (piece.bc == BoundaryCondition::Dirichlet) {
            expected = prob.exact().value(x);
          } else {
            const Jet G = prob.exact().jet(x, 1);
            const Point nrm = piece.outward_normal(t);
            expected = G.derivative({1, 0}) * nrm[0];
            if (dim == 2) expected += G.derivative({0, 1}) * nrm[1];
          }
          CHECK(data.value({t, 0.0}) ==
                doctest::Approx(expected).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("apply_L_component agrees with direct data evaluation at order 0") {
  const Domain dom = Domain::interval();
  const auto prob = PoissonProblem::manufactured("trig", dom);
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Point p{rng.uniform(0.0, 1.0), 0.0};
    CHECK(apply_L_component(prob.exact(), Component::Interior, p, {0, 0}) ==
          doctest::Approx(prob.f().value(p)).epsilon(1e-11));
  }
  for (const auto& piece : dom.pieces()) {
    BoundaryFrame frame{&piece, 0.0};
    const Component k = piece.bc == BoundaryCondition::Dirichlet
                            ? Component::Dirichlet
                            : Component::Neumann;
    CHECK(apply_L_component(prob.exact(), k, frame, 0) ==
          doctest::Approx(prob.boundary_data(piece).value({0.0, 0.0})));
  }
}

TEST_CASE("tangential derivatives on a circular arc") {
  // u = x on the unit circle: u(theta) = cos(theta); arc-length derivative
  // of the trace is -sin(theta).
  const Domain disk = Domain::ball(2, {0.0, 0.0}, 1.0);
  const FunctionSample u = fs_linear(2, 0.0, {1.0, 0.0});
  const BoundaryPiece& circle = disk.pieces()[0];
  for (double theta : {0.3, 1.2, 2.9}) {
    BoundaryFrame frame{&circle, theta};  // radius 1: t == theta
    CHECK(apply_L_component(u, Component::Dirichlet, frame, 1) ==
          doctest::Approx(-std::sin(theta)).epsilon(1e-10));
    // Normal derivative of x on the circle is cos(theta), tangential
    // derivative of that is -sin(theta).
    CHECK(apply_L_component(u, Component::Neumann, frame, 1) ==
          doctest::Approx(-std::sin(theta)).epsilon(1e-10));
  }
}

TEST_CASE("0-dimensional boundary components reject derivative orders") {
  const Domain dom = Domain::interval();
  const FunctionSample u = fs_trig(1);
  BoundaryFrame frame{&dom.pieces()[0], 0.0};
  CHECK_THROWS_AS(apply_L_component(u, Component::Dirichlet, frame, 1),
                  std::invalid_argument);
}

TEST_CASE("mtilde - m must be a nonnegative integer") {
  CHECK_THROWS_AS(
      PoissonProblem::manufactured("trig", Domain::interval(), 2.0, 2.5),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PoissonProblem::manufactured("trig", Domain::interval(), 2.0, 1.0),
      std::invalid_argument);
  CHECK_NOTHROW(
      PoissonProblem::manufactured("trig", Domain::interval(), 2.0, 5.0));
}

TEST_CASE("unknown catalog id") {
  CHECK_THROWS_AS(PoissonProblem::manufactured("mystery", Domain::interval()),
                  std::invalid_argument);
}
