#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "samplab/kernels.hpp"
#include "samplab/poisson.hpp"
#include "samplab/test_discretization.hpp"

namespace samplab {

/// Overdetermined collocation system for min ||pi_s (L u_r - f)||_{T_s}
/// (strong testing; the test mapping is the identity).  Rows carry the
/// component weights s^{n_k/2}, so plain Euclidean norms of residuals are
/// discrete test norms.
struct CollocationSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<RowKey> row_map;
  std::size_t kernel_columns = 0;
  std::size_t tail_columns = 0;
};

/// The weighted design matrix alone (rows = test functionals of L applied
/// to the trial basis).
Eigen::MatrixXd assemble_matrix(const TrialSpace& space,
                                const TestDiscretization& td);

CollocationSystem assemble(const TrialSpace& space,
                           const TestDiscretization& td,
                           const PoissonProblem& prob);

struct SolveReport {
  std::vector<double> coeffs;
  double residual = 0.0;  // discrete test norm of L u - f
  int effective_rank = 0;
  double truncation = 0.0;
  double condition = 0.0;  // sigma_max / sigma_min among kept values
};

SolveReport solve_least_squares(const CollocationSystem& sys,
                                double truncation = 1e-12);

/// beta-hat: largest generalized singular value of (reference surrogate
/// matrix, coarse matrix) over the trial space.  The continuous test norm
/// of L u_r is replaced by a discrete surrogate on the reference nodes
/// sampling intrinsic derivatives up to floor(m_k) with the usual
/// s^{n_k/2} weights.
double estimate_stability_factor(const TrialSpace& space,
                                 const TestDiscretization& td,
                                 const TestDiscretization& reference);

void write_system_csv(const std::string& dir, const CollocationSystem& sys);

}  // namespace samplab
