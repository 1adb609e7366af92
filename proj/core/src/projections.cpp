#include "podrom/projections.hpp"

#include <cmath>
#include <stdexcept>

namespace podrom {

namespace {

Space projector_gram_space(const PodBasis& basis, ProjectorKind kind) {
  switch (kind) {
    case ProjectorKind::PodOrthogonal:
      return basis.space;
    case ProjectorKind::Ritz:
      return Space::H10;
    case ProjectorKind::L2:
      return Space::L2;
  }
  throw std::invalid_argument("unknown projector kind");
}

}  // namespace

Eigen::MatrixXd projection_coefficients(const PodBasis& basis, int r,
                                        const Eigen::MatrixXd& u,
                                        ProjectorKind kind) {
  if (r < 1 || r > basis.rank) {
    throw std::invalid_argument("projection: r out of range");
  }
  if (u.rows() != basis.modes.rows()) {
    throw std::invalid_argument("projection: size mismatch");
  }
  const SymTridiag g = gram_operator(basis.mesh, projector_gram_space(basis, kind));
  const auto phi = basis.modes.leftCols(r);
  const Eigen::MatrixXd gphi = g.apply(phi);
  Eigen::MatrixXd rhs = gphi.transpose() * u;
  if (kind == ProjectorKind::PodOrthogonal) {
    // by construction the reduced Gram is the identity
    return rhs;
  }
  const Eigen::MatrixXd reduced = phi.transpose() * gphi;
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (reduced + reduced.transpose()));
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("projection: singular reduced Gram matrix");
  }
  return llt.solve(rhs);
}

Eigen::MatrixXd project_columns(const PodBasis& basis, int r,
                                const Eigen::MatrixXd& u, ProjectorKind kind) {
  return basis.modes.leftCols(r) * projection_coefficients(basis, r, u, kind);
}

NodalField project(const PodBasis& basis, int r, const NodalField& u,
                   ProjectorKind kind) {
  if (u.mesh != basis.mesh) {
    throw std::invalid_argument("projection: mesh mismatch");
  }
  return NodalField{project_columns(basis, r, u.values, kind), basis.mesh};
}

PointwiseErrorSeries pointwise_errors(const SnapshotSet& snaps, const PodBasis& basis,
                                      int r, Space w, ProjectorKind kind) {
  const Eigen::MatrixXd res =
      snaps.values - project_columns(basis, r, snaps.values, kind);
  const SymTridiag gw = gram_operator(snaps.mesh, w);
  PointwiseErrorSeries series;
  series.w = w;
  series.r = r;
  series.kind = kind;
  series.errors =
      res.cwiseProduct(gw.apply(res)).colwise().sum().cwiseSqrt().transpose();
  return series;
}

double eigenvalue_tail(const PodBasis& basis, int r, Space w) {
  if (r < 0 || r > basis.rank) {
    throw std::invalid_argument("eigenvalue_tail: r out of range");
  }
  if (r == basis.rank) return 0.0;
  const SymTridiag gw = gram_operator(basis.mesh, w);
  const auto tail = basis.modes.rightCols(basis.rank - r);
  const Eigen::VectorXd wnorm2 =
      tail.cwiseProduct(gw.apply(tail)).colwise().sum();
  return basis.eigenvalues.tail(basis.rank - r).dot(wnorm2);
}

double assumption_ratio(const PointwiseErrorSeries& series, const PodBasis& basis,
                        int r, Space w, std::optional<int> at_index) {
  if (r >= basis.rank) {
    throw std::invalid_argument("assumption_ratio: r = rank gives a zero tail");
  }
  const double tail = eigenvalue_tail(basis, r, w);
  if (tail < 1e-300) {
    throw std::invalid_argument("assumption_ratio: eigenvalue tail vanishes");
  }
  double err;
  if (at_index) {
    if (*at_index < 0 || *at_index >= series.errors.size()) {
      throw std::invalid_argument("assumption_ratio: index out of range");
    }
    err = series.errors[*at_index];
  } else {
    err = series.errors.maxCoeff();
  }
  return err * err / tail;
}

SobolevCheck sobolev_check(const Eigen::MatrixXd& z, const Mesh1D& mesh, double dt,
                           Space norm_space) {
  if (z.cols() < 2) throw std::invalid_argument("sobolev_check: need >= 2 vectors");
  if (dt <= 0.0) throw std::invalid_argument("sobolev_check: dt must be positive");
  const int n_steps = static_cast<int>(z.cols()) - 1;
  const double t_final = n_steps * dt;
  const SymTridiag g = gram_operator(mesh, norm_space);

  const Eigen::VectorXd norm2 = z.cwiseProduct(g.apply(z)).colwise().sum();
  const Eigen::MatrixXd dz = difference_quotients(z, dt);
  const Eigen::VectorXd dnorm2 = dz.cwiseProduct(g.apply(dz)).colwise().sum();

  SobolevCheck check;
  check.lhs = norm2.maxCoeff();
  check.rhs = 6.0 * std::max(1.0, t_final * t_final) * (norm2.sum() + dnorm2.sum()) /
              (2.0 * n_steps + 1.0);
  check.holds = check.lhs <= check.rhs * (1.0 + 1e-12);
  return check;
}

OptimalityQuantities optimality_quantities(const SnapshotSet& snaps,
                                           const PodBasis& basis, int r, Space w) {
  if (r >= basis.rank) {
    throw std::invalid_argument("optimality_quantities: requires r < rank");
  }
  const ProjectorKind kind = w == Space::L2 ? ProjectorKind::L2 : ProjectorKind::Ritz;
  OptimalityQuantities q;
  q.r = r;
  q.w = w;

  const PointwiseErrorSeries series = pointwise_errors(snaps, basis, r, w, kind);
  const double max_err = series.errors.tail(series.errors.size() - 1).maxCoeff();
  q.lambda_star = max_err * max_err;

  q.lambda_i = eigenvalue_tail(basis, r, w);

  const Eigen::MatrixXd tail = basis.modes.rightCols(basis.rank - r);
  const Eigen::MatrixXd defect = tail - project_columns(basis, r, tail, kind);
  const SymTridiag gw = gram_operator(basis.mesh, w);
  const Eigen::VectorXd wnorm2 =
      defect.cwiseProduct(gw.apply(defect)).colwise().sum();
  q.lambda_ii = basis.eigenvalues.tail(basis.rank - r).dot(wnorm2);
  return q;
}

}  // namespace podrom
