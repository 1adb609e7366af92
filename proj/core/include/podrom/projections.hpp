#pragma once

#include <optional>

#include "podrom/pod.hpp"

namespace podrom {

/// Projection of u onto span(phi_1..phi_r). For Ritz/L2 the coefficients
/// solve the reduced Gram system; for PodOrthogonal they are the H inner
/// products with the modes.
NodalField project(const PodBasis& basis, int r, const NodalField& u,
                   ProjectorKind kind);

/// Column-wise projection of a matrix of nodal vectors.
Eigen::MatrixXd project_columns(const PodBasis& basis, int r,
                                const Eigen::MatrixXd& u, ProjectorKind kind);

/// Reduced coefficients c with projection = modes(:,1..r) * c.
Eigen::MatrixXd projection_coefficients(const PodBasis& basis, int r,
                                        const Eigen::MatrixXd& u,
                                        ProjectorKind kind);

/// ||u^n - R_r u^n||_W for n = 0..N over the snapshot columns only.
struct PointwiseErrorSeries {
  Eigen::VectorXd errors;
  Space w = Space::L2;
  int r = 0;
  ProjectorKind kind = ProjectorKind::PodOrthogonal;
};

PointwiseErrorSeries pointwise_errors(const SnapshotSet& snaps, const PodBasis& basis,
                                      int r, Space w, ProjectorKind kind);

/// Squared pointwise error over the eigenvalue tail sum
/// sum_{i>r} lambda_i ||phi_i||_W^2. The numerator is the max over n by
/// default, or the entry at `at_index` when given. Requires r < rank.
double assumption_ratio(const PointwiseErrorSeries& series, const PodBasis& basis,
                        int r, Space w, std::optional<int> at_index = std::nullopt);

/// sum_{i>r} lambda_i ||phi_i||_W^2 (the eigenvalue tail in the W norm).
double eigenvalue_tail(const PodBasis& basis, int r, Space w);

struct SobolevCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Discrete time Sobolev inequality: max_k ||z^k||^2 bounded by
/// 6*max(1,T^2) times the (2N+1)-weighted sums of ||z^n||^2 and ||dz^n||^2.
SobolevCheck sobolev_check(const Eigen::MatrixXd& z, const Mesh1D& mesh, double dt,
                           Space norm_space);

/// Discretization-error quantities: lambda_star is the max over n = 1..N of
/// the squared best pointwise approximation error in W, lambda_i the
/// eigenvalue tail, lambda_ii the tail weighted by the W-projection defects
/// of the modes. The W-orthogonal projector is L2 for W = L2 and Ritz for
/// W = H10.
struct OptimalityQuantities {
  double lambda_star = 0.0;
  double lambda_i = 0.0;
  double lambda_ii = 0.0;
  int r = 0;
  Space w = Space::L2;
};

OptimalityQuantities optimality_quantities(const SnapshotSet& snaps,
                                           const PodBasis& basis, int r, Space w);

}  // namespace podrom
