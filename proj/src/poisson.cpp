#include "samplab/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace samplab {

PoissonProblem PoissonProblem::from_exact(Domain dom, FunctionSample exact,
                                          double m, double mtilde) {
  const double gap = mtilde - m;
  if (gap < -1e-12 || std::abs(gap - std::round(gap)) > 1e-9)
    throw std::invalid_argument("mtilde - m must be a nonnegative integer");
  PoissonProblem p;
  p.dom_ = std::move(dom);
  p.f_ = negative_laplacian(exact);
  p.exact_ = std::move(exact);
  p.m_ = m;
  p.mtilde_ = mtilde;
  return p;
}

PoissonProblem PoissonProblem::zero_data(Domain dom, double m, double mtilde) {
  PoissonProblem p;
  p.f_ = fs_zero(dom.dim());
  p.dom_ = std::move(dom);
  p.m_ = m;
  p.mtilde_ = mtilde;
  return p;
}

PoissonProblem PoissonProblem::manufactured(const std::string& id,
                                            const Domain& dom, double m,
                                            double mtilde) {
  return from_exact(dom, catalog_function(id, dom.dim()), m, mtilde);
}

FunctionSample PoissonProblem::boundary_data(const BoundaryPiece& piece) const {
  if (!exact_) {
    return FunctionSample(1, 12,
                          [](const Point&, int k) { return Jet(1, k); });
  }
  if (piece.bc == BoundaryCondition::Dirichlet)
    return restrict_to_piece(*exact_, piece);
  return normal_derivative_on_piece(*exact_, piece);
}

double apply_L_component(const FunctionSample& u, Component k, const Point& x,
                         const MultiIndex& alpha) {
  if (k != Component::Interior)
    throw std::invalid_argument("multi-index form is for the interior component");
  const int need = order_of(alpha) + 2;
  const Jet J = u.jet(x, need);
  double lap = J.derivative({alpha[0] + 2, alpha[1]});
  if (u.dim() == 2) lap += J.derivative({alpha[0], alpha[1] + 2});
  return -lap;
}

double apply_L_component(const FunctionSample& u, Component k,
                         const BoundaryFrame& frame, int order) {
  if (k == Component::Interior)
    throw std::invalid_argument("interior component takes a multi-index");
  if (frame.piece == nullptr) throw std::invalid_argument("missing frame");
  if (frame.piece->dim == 1 && order != 0)
    throw std::invalid_argument(
        "derivative order on 0-dimensional component must be 0");
  const FunctionSample field =
      k == Component::Dirichlet
          ? restrict_to_piece(u, *frame.piece)
          : normal_derivative_on_piece(u, *frame.piece);
  return field.derivative({frame.t, 0.0}, {order, 0});
}

}  // namespace samplab
