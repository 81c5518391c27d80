#include <cmath>
#include <fstream>

#include "doctest.h"
#include "samplab/rng.hpp"
#include "samplab/test_discretization.hpp"

using namespace samplab;

TEST_CASE("stacked vector length on the interval") {
  // mu1 = 0: one entry per interior node plus the two endpoint rows.
  const Domain dom = Domain::interval();
  const auto td = TestDiscretization::create(dom, 2.0, 0, 0.05,
                                             PointStrategy::UniformGrid, 1);
  std::size_t interior = 0;
  for (const auto& part : td.parts())
    if (part.k == Component::Interior) interior = part.nodes.size();
  CHECK(td.vector_length() == interior + 2);
}

TEST_CASE("2D interior with mu1 = 1 stacks 3 entries per node") {
  const Domain sq = Domain::unit_square();
  const auto td = TestDiscretization::create(sq, 3.0, 1, 0.2,
                                             PointStrategy::UniformGrid, 1);
  const auto keys = td.index_map();
  // First node's entries: (0,0), (1,0), (0,1).
  REQUIRE(keys.size() >= 3);
  CHECK(keys[0].alpha == MultiIndex{0, 0});
  CHECK(keys[1].alpha == MultiIndex{1, 0});
  CHECK(keys[2].alpha == MultiIndex{0, 1});
  CHECK(keys[0].node == keys[2].node);
  std::size_t expected = 0;
  for (const auto& part : td.parts()) {
    if (part.k == Component::Interior)
      expected += 3 * part.nodes.size();
    else
      expected += (part.mu + 1) * part.nodes.size();
  }
  CHECK(td.vector_length() == expected);
  CHECK(td.index_map().size() == td.vector_length());
}

TEST_CASE("zero field discretizes to the zero vector") {
  const Domain dom = Domain::interval();
  const auto td = TestDiscretization::create(dom, 2.0, 1, 0.1,
                                             PointStrategy::UniformGrid, 1);
  const auto v = td.discretize(constant_fields(1, 0.0));
  CHECK(v.norm() == 0.0);
}

TEST_CASE("discrete norm formula") {
  // Hand-built discretization: weight s^{n_k} on the squared pieces.
  const Domain sq = Domain::unit_square();
  auto td = TestDiscretization::create(sq, 3.0, 0, 0.26,
                                       PointStrategy::UniformGrid, 1);
  // s = 1: plain Euclidean norm is recovered by scaling the formula.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(td.vector_length());
  v(0) = 3.0;
  v(1) = 4.0;
  double expected = std::sqrt(std::pow(td.s(), 2) * 25.0);
  CHECK(td.discrete_norm(v) == doctest::Approx(expected));
  CHECK(td.discrete_norm(Eigen::VectorXd::Zero(td.vector_length())) == 0.0);
}

TEST_CASE("discrete norm is homogeneous and satisfies the triangle inequality") {
  const Domain dom = Domain::interval();
  const auto td = TestDiscretization::create(dom, 2.0, 1, 0.07,
                                             PointStrategy::UniformGrid, 2);
  Rng rng(9);
  const auto len = static_cast<Eigen::Index>(td.vector_length());
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd a(len), b(len);
    for (Eigen::Index i = 0; i < len; ++i) {
      a(i) = rng.uniform(-1.0, 1.0);
      b(i) = rng.uniform(-1.0, 1.0);
    }
    const double c = rng.uniform(-3.0, 3.0);
    CHECK(td.discrete_norm(c * a) ==
          doctest::Approx(std::abs(c) * td.discrete_norm(a)).epsilon(1e-12));
    CHECK(td.discrete_norm(a + b) <=
          td.discrete_norm(a) + td.discrete_norm(b) + 1e-12);
  }
}

TEST_CASE("test orders must satisfy m - mu1 - n/2 > 0") {
  CHECK_THROWS_AS(TestDiscretization::create(Domain::unit_square(), 2.0, 1,
                                             0.2, PointStrategy::UniformGrid, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(TestDiscretization::create(Domain::unit_square(), 3.0, 1, 0.2,
                                           PointStrategy::UniformGrid, 1));
  // 1D admits mu1 = 1 at m = 2.
  CHECK_NOTHROW(TestDiscretization::create(Domain::interval(), 2.0, 1, 0.1,
                                           PointStrategy::UniformGrid, 1));
}

TEST_CASE("2D derived orders are mu1+2 and mu1+1") {
  const auto td = TestDiscretization::create(Domain::unit_square(), 4.0, 1,
                                             0.2, PointStrategy::UniformGrid, 1);
  for (const auto& part : td.parts()) {
    if (part.k == Component::Dirichlet) CHECK(part.mu == 3);
    if (part.k == Component::Neumann) CHECK(part.mu == 2);
    if (part.k == Component::Interior) CHECK(part.mu == 1);
  }
}

TEST_CASE("pi_s of a fixed smooth field stays bounded as s shrinks") {
  const Domain dom = Domain::interval();
  const auto fields = l_image_fields(fs_trig(1));
  std::vector<double> norms;
  for (double s : {0.1, 0.05, 0.025, 0.0125}) {
    const auto td = TestDiscretization::create(dom, 2.0, 0, s,
                                               PointStrategy::UniformGrid, 1);
    norms.push_back(td.discrete_norm(td.discretize(fields)));
  }
  for (double v : norms) {
    CHECK(v <= 1.5 * norms.front());
    CHECK(v >= norms.front() / 1.5);
  }
}

TEST_CASE("operator norm estimate reports bounded ratios") {
  const Domain dom = Domain::interval();
  std::vector<TestDiscretization> tds;
  for (double s : {0.1, 0.05, 0.025, 0.0125})
    tds.push_back(TestDiscretization::create(dom, 2.0, 0, s,
                                             PointStrategy::UniformGrid, 1));
  QuadratureSpec quad;
  std::vector<std::pair<std::string, ComponentFields>> probes;
  probes.push_back({"one", constant_fields(1, 1.0)});
  probes.push_back({"trig", l_image_fields(fs_trig(1))});
  probes.push_back({"zero", constant_fields(1, 0.0)});
  const auto report = operator_norm_estimate(tds, probes, quad);
  CHECK(report.bounded);
  bool saw_skip = false;
  for (const auto& row : report.rows)
    if (row.probe == "zero") saw_skip = saw_skip || row.skipped;
  CHECK(saw_skip);
  CHECK_FALSE(report.notices.empty());
  // Constant probe: ratios constant within 20 percent.
  std::vector<double> ones;
  for (const auto& row : report.rows)
    if (row.probe == "one" && !row.skipped) ones.push_back(row.ratio);
  REQUIRE(ones.size() == 4);
  for (double rr : ones)
    CHECK(rr == doctest::Approx(ones.front()).epsilon(0.2));
}

TEST_CASE("stacked CSV export lists every entry") {
  const Domain dom = Domain::interval();
  const auto td = TestDiscretization::create(dom, 2.0, 1, 0.2,
                                             PointStrategy::UniformGrid, 1);
  const auto v = td.discretize(l_image_fields(fs_trig(1)));
  write_stacked_csv("/tmp/samplab_stacked.csv", td, v);
  std::ifstream in("/tmp/samplab_stacked.csv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == td.vector_length() + 1);
}

TEST_CASE("2D operator norm estimate stays bounded") {
  const Domain sq = Domain::unit_square();
  std::vector<TestDiscretization> tds;
  for (double s : {0.2, 0.14, 0.1})
    tds.push_back(TestDiscretization::create(sq, 3.0, 0, s,
                                             PointStrategy::UniformGrid, 1));
  QuadratureSpec quad;
  quad.cells = 16;
  std::vector<std::pair<std::string, ComponentFields>> probes;
  probes.push_back({"one", constant_fields(2, 1.0)});
  probes.push_back({"trig", l_image_fields(fs_trig(2))});
  const auto report = operator_norm_estimate(tds, probes, quad);
  CHECK(report.bounded);
  for (const auto& row : report.rows) {
    CHECK_FALSE(row.skipped);
    CHECK(std::isfinite(row.ratio));
    CHECK(row.ratio > 0.0);
  }
}
