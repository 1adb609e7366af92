#pragma once

#include <iosfwd>

#include "podrom/snapshots.hpp"

namespace podrom {

/// Projector onto the span of the leading POD modes.
/// PodOrthogonal uses the basis inner product, Ritz the stiffness Gram,
/// L2 the mass Gram.
enum class ProjectorKind { PodOrthogonal, Ritz, L2 };

/// Weighted snapshot Gram matrix K_mn = weight * (col_m, col_n)_H over all
/// POD columns (snapshots plus DQs when present).
struct CorrelationMatrix {
  Eigen::MatrixXd k;
  double weight = 0.0;
};

CorrelationMatrix correlation_matrix(const SnapshotSet& snaps, Space space);

/// POD basis from the method of snapshots: eigenpairs of the correlation
/// matrix, modes phi_i = sqrt(weight/lambda_i) * sum_m (z_i)_m col_m.
struct PodBasis {
  Eigen::MatrixXd modes;        // n_dof x rank, H-orthonormal columns
  Eigen::VectorXd eigenvalues;  // rank entries, non-increasing
  int rank = 0;                 // s = number of retained positive eigenvalues
  Space space = Space::L2;      // the H inner product
  bool dq = false;
  double weight = 0.0;
  Mesh1D mesh;
  double dt = 0.0;
  double T = 0.0;
  int n_snapshot_steps = 0;  // N of the source snapshot set

  NodalField mode(int i) const { return NodalField{modes.col(i), mesh}; }
};

/// Relative eigenvalue cutoff defining the retained rank s.
inline constexpr double kRankEps = 1e-12;

PodBasis compute_pod(const SnapshotSet& snaps, Space space);

/// P_r u = sum_{i<=r} (u, phi_i)_H phi_i.
NodalField pod_project(const PodBasis& basis, int r, const NodalField& u);

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the total projection-error identity in the W norm:
/// weighted sum of squared column errors vs. the eigenvalue tail sum
/// weighted by ||(I - R_r) phi_i||_W^2.
IdentityPair total_error_identity(const SnapshotSet& snaps, const PodBasis& basis,
                                  int r, Space w, ProjectorKind projector);

/// CSV layout: eigenvalue header row, then one row of nodal values per
/// interior node, %.17g.
void write_basis_csv(const PodBasis& basis, std::ostream& os);

}  // namespace podrom
