#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "samplab/kernels.hpp"
#include "samplab/poisson.hpp"
#include "samplab/regression.hpp"
#include "samplab/sobolev.hpp"
#include "samplab/solver.hpp"

namespace samplab {

/// Convergence order promised by the framework for data scale m, regularity
/// scale mtilde and test order mu1: (mtilde - m) + (mu1 - m) when
/// m - mu1 > n/2, otherwise nothing (the table's "None" cells).
std::optional<double> predicted_order(double m, double mtilde, int mu1, int n);

struct RateFit {
  double rate = 0.0;
  double stderr_ = 0.0;
  int used = 0;
};

/// Log-log least-squares rate; nonpositive errors are dropped with a
/// notice, fewer than 3 surviving pairs is an error.
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs,
                 std::vector<std::string>* notices = nullptr);

struct StudyConfig {
  std::string problem = "trig";
  std::string domain = "interval";  // interval | square | disk
  std::string kernel_family = "matern";
  double kernel_shape = 3.0;
  double kernel_mtilde = 5.0;
  int kernel_order = 0;  // matern k / wendland k; 0 derives a default
  double m = 2.0;
  int mu1 = 0;
  std::vector<double> h_sequence{0.2, 0.1, 0.05, 0.025};
  double s_over_r = 0.5;
  std::vector<SobolevOrder> norms{{0.0, 2.0}, {1.0, 2.0}, {2.0, 2.0}};
  int quad_cells = 48;
  int quad_gauss = 5;
  double truncation = 1e-12;
  std::uint64_t seed = 1;
  std::string strategy = "uniform-grid";
  double rate_tolerance = 0.5;
  int tail_degree = -1;
  std::string out_dir = "out";

  // verify-* subcommand extras (same key-value file format)
  std::string function = "trig";
  std::vector<double> eps_list{0.3, 0.6, 0.9};
  double q_exponent = 2.0;
  std::vector<double> radii{1.0, 0.5, 0.25, 0.125};
  double r_smoothness = 2.0;
  int mu = 0;
  double l_order = 0.0;
  std::vector<double> d_sequence{0.1, 0.05, 0.025, 0.0125};

  QuadratureSpec quadrature() const;
  Domain make_domain() const;
  Kernel make_kernel(int n) const;
};

/// Parse a `key = value` config file mirroring StudyConfig field names.
StudyConfig parse_config(const std::string& path);
StudyConfig parse_config_text(const std::string& text);

struct HRecord {
  double h = 0.0;           // configured trial fill target
  double r_measured = 0.0;  // measured center fill
  double s_measured = 0.0;  // measured test fill
  std::size_t centers = 0;
  std::size_t rows = 0;
  std::vector<double> errors;  // one per requested norm
  double beta_hat = 0.0;
  double residual = 0.0;
  int effective_rank = 0;
  double condition = 0.0;
  std::string diagnostic;  // nonempty when this h failed
  bool ok = false;
};

struct NormRate {
  SobolevOrder order{0.0, 2.0};
  RateFit fit;
  double predicted = 0.0;
  std::string verdict;  // pass | fail
};

struct ConvergenceReport {
  StudyConfig cfg;
  std::vector<HRecord> records;
  std::vector<NormRate> rates;
  std::vector<std::string> notices;
  bool all_pass = false;
};

ConvergenceReport run_study(const StudyConfig& cfg);
/// Same study driven by an explicit problem (e.g. a solution synthesized
/// from a trial space) instead of the catalog id in the config.
ConvergenceReport run_study(const StudyConfig& cfg,
                            const PoissonProblem& prob);

struct EpsilonRow {
  double r;
  double eps_hat;
};

struct EpsilonReport {
  std::vector<EpsilonRow> rows;
  SlopeFit slope;
  double reference_rate;  // mtilde - m
};

/// Measured trial-space approximation power over a fill-distance sequence.
EpsilonReport measure_epsilon(const std::vector<TrialSpace>& spaces,
                              const FunctionSample& target, int proxy_order,
                              const Domain& dom, const QuadratureSpec& quad,
                              double reference_rate);

struct GammaReport {
  std::vector<EpsilonRow> rows;  // (fill, gamma_hat)
  SlopeFit slope;
  double reference_rate;  // m - mtilde (the expected, unproven exponent)
};

/// Measured inverse-estimate factor: the largest ratio of the discrete
/// H^{mtilde+2} proxy to the H^{m+2} proxy over each trial space.  A
/// sharp bound for kernel trial spaces is an open problem; this only
/// observes the trend.
GammaReport measure_gamma(const std::vector<TrialSpace>& spaces, double m,
                          double mtilde, const Domain& dom,
                          const QuadratureSpec& quad);

void write_report_json(const std::string& path, const ConvergenceReport& rep);
void write_errors_csv(const std::string& path, const ConvergenceReport& rep);
void write_rates_csv(const std::string& path, const ConvergenceReport& rep);

}  // namespace samplab
