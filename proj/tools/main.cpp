// Command-line front end: inequality verification and convergence studies.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "samplab/lab.hpp"
#include "samplab/verifier.hpp"

namespace fs = std::filesystem;
using samplab::StudyConfig;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

StudyConfig load_config(const CommonArgs& args) {
  StudyConfig cfg = args.config_path.empty()
                        ? StudyConfig{}
                        : samplab::parse_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.seed_set) cfg.seed = args.seed;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

samplab::FunctionSample pick_function(const std::string& name, int dim) {
  if (name == "linear") return samplab::fs_linear(dim, 0.0, {1.0, 0.5});
  if (name == "constant") return samplab::fs_constant(dim, 1.0);
  return samplab::catalog_function(name, dim);
}

int run_predict(double m, double mtilde, int mu1, int n, bool quiet) {
  const auto order = samplab::predicted_order(m, mtilde, mu1, n);
  if (!quiet) {
    if (order)
      std::printf("predicted order: %g\n", *order);
    else
      std::printf("predicted order: None\n");
  }
  return 0;
}

int run_convergence(const CommonArgs& args) {
  const StudyConfig cfg = load_config(args);
  const auto report = samplab::run_study(cfg);
  samplab::write_report_json(cfg.out_dir + "/report.json", report);
  samplab::write_errors_csv(cfg.out_dir + "/errors.csv", report);
  samplab::write_rates_csv(cfg.out_dir + "/rates.csv", report);
  if (!args.quiet) {
    for (const auto& nr : report.rates)
      std::printf("norm %g:%s fitted %.3f predicted %.3f -> %s\n", nr.order.l,
                  nr.order.q == samplab::kInf ? "inf" : "2", nr.fit.rate,
                  nr.predicted, nr.verdict.c_str());
  }
  return report.all_pass ? 0 : 1;
}

int run_solve(const CommonArgs& args) {
  StudyConfig cfg = load_config(args);
  const samplab::Domain dom = cfg.make_domain();
  const int n = dom.dim();
  const samplab::Kernel kernel = cfg.make_kernel(n);
  const auto prob = samplab::PoissonProblem::manufactured(
      cfg.problem, dom, cfg.m, cfg.kernel_mtilde);
  const double h = cfg.h_sequence.front();
  samplab::PointSet centers = samplab::generate_point_set(
      dom, samplab::Component::Interior, h, samplab::parse_strategy(cfg.strategy),
      cfg.seed);
  samplab::TrialSpace space(kernel, std::move(centers), n, cfg.tail_degree);
  const auto td = samplab::TestDiscretization::create(
      dom, cfg.m, cfg.mu1, cfg.s_over_r * h,
      samplab::parse_strategy(cfg.strategy), cfg.seed + 31);
  const auto sys = samplab::assemble(space, td, prob);
  const auto rep = samplab::solve_least_squares(sys, cfg.truncation);
  samplab::write_system_csv(cfg.out_dir + "/system", sys);

  ordered_json j;
  j["h"] = h;
  j["centers"] = space.centers().size();
  j["rows"] = td.vector_length();
  j["residual"] = rep.residual;
  j["effective_rank"] = rep.effective_rank;
  j["condition"] = rep.condition;
  if (prob.has_exact()) {
    const auto err = prob.exact() - space.as_function(rep.coeffs);
    const auto quad = cfg.quadrature();
    for (const auto& order : cfg.norms) {
      char key[32];
      std::snprintf(key, sizeof key, "error_%g", order.l);
      j[key] = samplab::sobolev_norm(err, order, dom, quad);
    }
  }
  std::ofstream out(cfg.out_dir + "/solve_report.json");
  out << j.dump(2) << "\n";
  if (!args.quiet)
    std::printf("solved: residual %.3e rank %d\n", rep.residual,
                rep.effective_rank);
  return 0;
}

int run_verify_fractional(const CommonArgs& args) {
  const StudyConfig cfg = load_config(args);
  const samplab::Domain dom = cfg.make_domain();
  const auto v = pick_function(cfg.function, dom.dim());
  const auto quad = cfg.quadrature();
  bool all_ok = true;
  std::ofstream csv(cfg.out_dir + "/fractional.csv");
  csv << "eps,q,radius,fractional,h1,ratio\n";
  std::ofstream norms_csv(cfg.out_dir + "/norms.csv");
  norms_csv << "function,l,q,value,quad_cells\n";
  char buf[160];
  for (double eps : cfg.eps_list) {
    const auto rep = samplab::verify_fractional_relation(
        v, eps, cfg.q_exponent, cfg.radii, quad);
    if (rep.skipped) {
      if (!args.quiet)
        std::printf("eps %.3g: skipped (degenerate probe)\n", eps);
      continue;
    }
    for (const auto& row : rep.rows) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.12g,%.12g,%.12g,%.12g", eps,
                    cfg.q_exponent, row.radius, row.fractional, row.h1,
                    row.ratio);
      csv << buf << "\n";
      std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.12g,%d",
                    cfg.function.c_str(), eps, cfg.q_exponent, row.fractional,
                    cfg.quad_cells);
      norms_csv << buf << "\n";
    }
    const bool slope_ok =
        std::abs(rep.slope.slope - rep.predicted_slope) <= 0.05;
    all_ok = all_ok && rep.bounded && slope_ok;
    if (!args.quiet)
      std::printf("eps %.3g: bounded=%s slope %.4f (predicted %.4f)\n", eps,
                  rep.bounded ? "yes" : "no", rep.slope.slope,
                  rep.predicted_slope);
  }
  return all_ok ? 0 : 1;
}

int run_verify_sampling(const CommonArgs& args) {
  const StudyConfig cfg = load_config(args);
  const samplab::Domain dom = cfg.make_domain();
  const auto u = pick_function(cfg.function, dom.dim());
  const samplab::SamplingParameters params(cfg.r_smoothness, cfg.mu, 2.0, 2.0,
                                           2.0, dom.dim());
  std::vector<samplab::PointSet> sets;
  for (std::size_t i = 0; i < cfg.d_sequence.size(); ++i)
    sets.push_back(samplab::generate_point_set(
        dom, samplab::Component::Interior, cfg.d_sequence[i],
        samplab::parse_strategy(cfg.strategy), cfg.seed + i));
  const auto trial = samplab::verify_sampling_inequality(
      u, cfg.function, params, cfg.l_order, dom, sets, cfg.quadrature());
  samplab::write_sampling_csv(cfg.out_dir + "/sampling.csv", trial);

  ordered_json j;
  j["function"] = trial.function_id;
  j["r"] = trial.r;
  j["mu"] = trial.mu;
  j["l"] = trial.l;
  j["correction_factor"] = trial.correction;
  j["consistent"] = trial.consistent;
  j["notices"] = trial.notices;
  std::ofstream out(cfg.out_dir + "/sampling_summary.json");
  out << j.dump(2) << "\n";
  if (!args.quiet)
    std::printf("sampling inequality (r=%g, l=%g, mu=%d): %s\n", trial.r,
                trial.l, trial.mu,
                trial.consistent ? "consistent" : "inconsistent");
  return trial.consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshless sampling-inequality laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "key = value config file");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--seed", args.seed, "seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
    sub->add_flag("--quiet", args.quiet, "suppress progress output");
  };

  auto* conv = app.add_subcommand("convergence", "run a convergence study");
  add_common(conv);
  auto* solve = app.add_subcommand("solve", "assemble and solve once");
  add_common(solve);
  auto* vfrac = app.add_subcommand("verify-fractional",
                                   "fractional/H1 scaling check on balls");
  add_common(vfrac);
  auto* vsamp = app.add_subcommand("verify-sampling",
                                   "sampling-inequality boundedness check");
  add_common(vsamp);

  double pm = 2.0, pmt = 5.0;
  int pmu = 0, pn = 2;
  auto* pred = app.add_subcommand("predict", "predicted convergence order");
  pred->add_option("--m", pm, "data scale m")->required();
  pred->add_option("--mtilde", pmt, "regularity scale mtilde")->required();
  pred->add_option("--mu1", pmu, "interior test order")->required();
  pred->add_option("--n", pn, "dimension")->required();
  pred->add_flag("--quiet", args.quiet, "suppress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pred->parsed()) return run_predict(pm, pmt, pmu, pn, args.quiet);
    if (conv->parsed()) return run_convergence(args);
    if (solve->parsed()) return run_solve(args);
    if (vfrac->parsed()) return run_verify_fractional(args);
    if (vsamp->parsed()) return run_verify_sampling(args);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
