#include "samplab/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace samplab {

namespace {

/// One column of the trial basis as a jet-backed function.
FunctionSample basis_function(const TrialSpace& space, std::size_t col) {
  return FunctionSample(space.dim(), space.kernel().max_jet_order(),
                        [&space, col](const Point& x, int k) {
                          return space.basis_jet(col, x, k);
                        });
}

}  // namespace

Eigen::MatrixXd assemble_matrix(const TrialSpace& space,
                                const TestDiscretization& td) {
  const auto& dom = td.domain();
  const int dim = dom.dim();
  const std::size_t rows = td.vector_length();
  const std::size_t cols = space.size();
  if (rows == 0) throw std::invalid_argument("empty test sets");
  Eigen::MatrixXd A(rows, cols);

  for (std::size_t j = 0; j < cols; ++j) {
    Eigen::Index at = 0;
    for (const auto& part : td.parts()) {
      const double w = td.part_weight(part);
      if (part.k == Component::Interior) {
        const auto alphas = multi_indices(dim, part.mu);
        const int need = part.mu + 2;
        if (need > space.kernel().max_jet_order())
          throw std::invalid_argument("jet order exceeded");
        for (const auto& x : part.nodes.nodes) {
          const Jet J = space.basis_jet(j, x, need);
          for (const auto& a : alphas) {
            double lap = J.derivative({a[0] + 2, a[1]});
            if (dim == 2) lap += J.derivative({a[0], a[1] + 2});
            A(at++, j) = -w * lap;
          }
        }
        continue;
      }
      const FunctionSample basis = basis_function(space, j);
      for (std::size_t i = 0; i < part.nodes.size(); ++i) {
        const auto& piece = dom.pieces()[part.nodes.piece[i]];
        const FunctionSample field =
            part.k == Component::Dirichlet
                ? restrict_to_piece(basis, piece)
                : normal_derivative_on_piece(basis, piece);
        const double t = part.nodes.param[i];
        if (part.nk == 0) {
          A(at++, j) = w * field.value({t, 0.0});
        } else {
          const Jet J = field.jet({t, 0.0}, part.mu);
          for (int o = 0; o <= part.mu; ++o)
            A(at++, j) = w * J.derivative({o, 0});
        }
      }
    }
  }
  return A;
}

CollocationSystem assemble(const TrialSpace& space,
                           const TestDiscretization& td,
                           const PoissonProblem& prob) {
  CollocationSystem sys;
  sys.A = assemble_matrix(space, td);
  if (sys.A.rows() < sys.A.cols())
    std::fprintf(stderr,
                 "warning: collocation system underdetermined (%lld rows, "
                 "%lld columns)\n",
                 static_cast<long long>(sys.A.rows()),
                 static_cast<long long>(sys.A.cols()));
  sys.row_map = td.index_map();
  sys.kernel_columns = space.centers().size();
  sys.tail_columns = space.size() - sys.kernel_columns;

  const auto fields = problem_data_fields(prob);
  Eigen::VectorXd raw = td.discretize(fields);
  sys.b.resize(raw.size());
  Eigen::Index at = 0;
  for (const auto& part : td.parts()) {
    const double w = td.part_weight(part);
    const int per_node =
        part.nk == 0 ? 1 : jet_size(std::max(part.nk, 1), part.mu);
    const Eigen::Index len =
        static_cast<Eigen::Index>(part.nodes.size() * per_node);
    sys.b.segment(at, len) = w * raw.segment(at, len);
    at += len;
  }
  return sys;
}

SolveReport solve_least_squares(const CollocationSystem& sys,
                                double truncation) {
  if (!(truncation >= 0.0 && truncation < 1.0))
    throw std::invalid_argument("truncation must lie in [0, 1)");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      sys.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (truncation > 0.0) svd.setThreshold(truncation);
  const int rank = static_cast<int>(svd.rank());
  if (rank == 0) throw std::runtime_error("system numerically zero");
  const Eigen::VectorXd c = svd.solve(sys.b);
  SolveReport rep;
  rep.coeffs.assign(c.data(), c.data() + c.size());
  rep.residual = (sys.A * c - sys.b).norm();
  rep.effective_rank = rank;
  rep.truncation = truncation;
  const auto& sv = svd.singularValues();
  rep.condition = sv(0) / sv(rank - 1);
  return rep;
}

namespace {

/// T-norm surrogate rows on the reference nodes: intrinsic derivatives of
/// the components of L(basis) up to floor(m_k), weighted s_ref^{n_k/2}.
/// Sampling only the test orders mu_k would make the quotient a ratio of
/// two Riemann sums of the same quantity, flat in s; the m_k-order rows
/// are what carry the test-space smoothness.
Eigen::MatrixXd assemble_norm_surrogate_matrix(const TrialSpace& space,
                                               const TestDiscretization& td) {
  const auto& dom = td.domain();
  const int dim = dom.dim();
  const double m = td.m();
  std::size_t rows = 0;
  std::vector<int> part_order;
  for (const auto& part : td.parts()) {
    int ord = 0;
    if (part.nk > 0) {
      const double mk = part.k == Component::Interior ? m
                        : part.k == Component::Dirichlet ? m + 1.5
                                                         : m + 0.5;
      ord = static_cast<int>(std::floor(mk));
    }
    part_order.push_back(ord);
    const int per_node =
        part.nk == 0 ? 1 : jet_size(std::max(part.nk, 1), ord);
    rows += part.nodes.size() * per_node;
  }
  Eigen::MatrixXd B(rows, space.size());
  for (std::size_t j = 0; j < space.size(); ++j) {
    const FunctionSample basis =
        FunctionSample(space.dim(), space.kernel().max_jet_order(),
                       [&space, j](const Point& x, int k) {
                         return space.basis_jet(j, x, k);
                       });
    Eigen::Index at = 0;
    std::size_t pi = 0;
    for (const auto& part : td.parts()) {
      const double w = td.part_weight(part);
      const int ord = part_order[pi++];
      if (part.k == Component::Interior) {
        const auto alphas = multi_indices(dim, ord);
        for (const auto& x : part.nodes.nodes) {
          const Jet J = space.basis_jet(j, x, ord + 2);
          for (const auto& a : alphas) {
            double lap = J.derivative({a[0] + 2, a[1]});
            if (dim == 2) lap += J.derivative({a[0], a[1] + 2});
            B(at++, j) = -w * lap;
          }
        }
        continue;
      }
      for (std::size_t i = 0; i < part.nodes.size(); ++i) {
        const auto& piece = dom.pieces()[part.nodes.piece[i]];
        const FunctionSample field =
            part.k == Component::Dirichlet
                ? restrict_to_piece(basis, piece)
                : normal_derivative_on_piece(basis, piece);
        const double t = part.nodes.param[i];
        if (part.nk == 0) {
          B(at++, j) = w * field.value({t, 0.0});
        } else {
          const Jet J = field.jet({t, 0.0}, ord);
          for (int o = 0; o <= ord; ++o)
            B(at++, j) = w * J.derivative({o, 0});
        }
      }
    }
  }
  return B;
}

}  // namespace

double estimate_stability_factor(const TrialSpace& space,
                                 const TestDiscretization& td,
                                 const TestDiscretization& reference) {
  if (reference.s() > td.s() * (1.0 + 1e-9))
    throw std::invalid_argument(
        "reference discretization must be at least as fine as the coarse one");
  const Eigen::MatrixXd A = assemble_matrix(space, td);
  const Eigen::MatrixXd B = assemble_norm_surrogate_matrix(space, reference);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  const int rank = static_cast<int>(svd.rank());
  if (rank == 0) throw std::runtime_error("untestable trial space");
  const Eigen::MatrixXd V = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd inv_sigma =
      svd.singularValues().head(rank).cwiseInverse();
  const Eigen::MatrixXd M = B * V * inv_sigma.asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> msvd(M);
  return msvd.singularValues()(0);
}

void write_system_csv(const std::string& dir, const CollocationSystem& sys) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  char buf[96];
  {
    std::ofstream out(dir + "/row_map.csv");
    out << "row,component,node,alpha1,alpha2\n";
    for (std::size_t i = 0; i < sys.row_map.size(); ++i) {
      const auto& k = sys.row_map[i];
      std::snprintf(buf, sizeof buf, "%zu,%d,%d,%d,%d", i,
                    static_cast<int>(k.k), k.node, k.alpha[0], k.alpha[1]);
      out << buf << "\n";
    }
  }
  {
    std::ofstream out(dir + "/col_map.csv");
    out << "col,kind,index\n";
    for (std::size_t j = 0; j < sys.kernel_columns + sys.tail_columns; ++j) {
      const bool tail = j >= sys.kernel_columns;
      std::snprintf(buf, sizeof buf, "%zu,%s,%zu", j,
                    tail ? "tail" : "center",
                    tail ? j - sys.kernel_columns : j);
      out << buf << "\n";
    }
  }
  {
    std::ofstream out(dir + "/entries.csv");
    out << "row,col,value\n";
    for (Eigen::Index i = 0; i < sys.A.rows(); ++i)
      for (Eigen::Index j = 0; j < sys.A.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.16g",
                      static_cast<long long>(i), static_cast<long long>(j),
                      sys.A(i, j));
        out << buf << "\n";
      }
  }
  {
    std::ofstream out(dir + "/rhs.csv");
    out << "row,value\n";
    for (Eigen::Index i = 0; i < sys.b.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%lld,%.16g", static_cast<long long>(i),
                    sys.b(i));
      out << buf << "\n";
    }
  }
}

}  // namespace samplab
