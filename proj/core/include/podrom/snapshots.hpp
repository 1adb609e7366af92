#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "podrom/fem1d.hpp"

namespace podrom {

/// Analytical solution of the heat equation u_t - nu*u_xx = f with the
/// forcing manufactured from the closed form of u.
struct ManufacturedSolution {
  std::function<double(double, double)> u;   // u(x, t)
  std::function<double(double, double)> f;   // f(x, t) = u_t - nu*u_xx
  std::function<double(double)> u0;          // u(x, 0)
  std::string label;
  /// Optional time-grid constraint; throws std::invalid_argument when dt is
  /// incompatible with the homogeneous boundary conditions.
  std::function<void(double)> validate_dt;
};

struct Cex1Params {
  int k = 128;
  double nu = 1.0;
};

struct Cex2Params {
  int k = 100;
  double alpha = 1.0;
  double delta = 0.01;
  double nu = 1.0;
};

/// Derived spectrum parameters of the second example problem:
/// lambda_{n+1} = beta * exp(-gamma*(n+1)) with rho = delta/dt.
struct Cex2Spectrum {
  double beta = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
};

/// u(x,t) = sin((k*t + 1)*pi*x). Valid on time grids with k*t integer.
ManufacturedSolution cex1(const Cex1Params& p);

/// u(x,t) = (2*delta)^{-1/2} * exp(-alpha*(1 + t/delta)/2) * sin((k*t+1)*pi*x).
/// dt must satisfy k*dt integer.
ManufacturedSolution cex2(const Cex2Params& p, double dt);

Cex2Spectrum cex2_spectrum(const Cex2Params& p, double dt, double T);

/// Time-indexed nodal snapshot columns u^0..u^N with optional difference
/// quotients. weight is 1/(N+1) without DQs and 1/(2N+1) with DQs.
struct SnapshotSet {
  Eigen::MatrixXd values;  // n_dof x (N+1)
  Eigen::MatrixXd dq;      // n_dof x N, empty in the noDQ case
  double dt = 0.0;
  double T = 0.0;
  double weight = 0.0;
  Mesh1D mesh;

  int n_steps() const { return static_cast<int>(values.cols()) - 1; }
  bool has_dq() const { return dq.cols() > 0; }
  int pod_cols() const { return static_cast<int>(values.cols() + dq.cols()); }
  /// Snapshot columns followed by the DQ columns.
  Eigen::MatrixXd all_columns() const;
  NodalField snapshot(int n) const { return NodalField{values.col(n), mesh}; }
};

/// Samples u on the uniform time grid t_n = n*T/n_steps, n = 0..n_steps.
SnapshotSet generate_snapshots(const ManufacturedSolution& sol, const Mesh1D& mesh,
                               double T, int n_steps, bool with_dq);

/// Wraps an existing column matrix as a snapshot set (used by property tests
/// and ad-hoc data). Requires >= 1 column, >= 2 when with_dq.
SnapshotSet snapshot_set_from_matrix(const Eigen::MatrixXd& u, double dt,
                                     const Mesh1D& mesh, bool with_dq);

/// Column n (0-based) = (u^{n+1} - u^n) / dt. Requires >= 2 columns.
Eigen::MatrixXd difference_quotients(const Eigen::MatrixXd& u, double dt);

/// CSV layout: header "x_index,t0,t1,...", one row per interior node, %.17g.
void write_snapshot_csv(const SnapshotSet& snaps, std::ostream& os);
SnapshotSet read_snapshot_csv(std::istream& is, double dt);

}  // namespace podrom
