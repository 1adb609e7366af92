#pragma once

#include <iosfwd>

#include "podrom/projections.hpp"

namespace podrom {

/// Treatment of the forcing in the Crank-Nicolson step: the average
/// (f(t_{n+1}) + f(t_n))/2 (default) or the midpoint value f(t_n + dt/2).
enum class CnForcing { Average, Midpoint };

enum class InitialProjection { L2, Ritz };

enum class RatioVariant { NoDq, Dq };

/// Reduced Crank-Nicolson Galerkin model of the heat equation.
struct RomModel {
  Eigen::MatrixXd mass_r;       // r x r, modes' mass Gram
  Eigen::MatrixXd stiffness_r;  // r x r, modes' stiffness Gram
  Eigen::MatrixXd modes_r;      // n_dof x r
  double nu = 0.0;
  Mesh1D mesh;
  std::function<double(double, double)> forcing;  // f(x, t)
  int r = 0;

  /// Reduced load vector modes_r^T * M * interp(f(., t)).
  Eigen::VectorXd load(double t) const;
};

RomModel assemble_rom(const PodBasis& basis, int r, double nu,
                      const ManufacturedSolution& sol, const Mesh1D& mesh);

/// Coefficients of the L2 or Ritz projection of the initial condition.
Eigen::VectorXd rom_initial_condition(const PodBasis& basis, int r,
                                      const NodalField& u0, InitialProjection kind);

struct RomTrajectory {
  Eigen::MatrixXd coeffs;  // (N+1) x r, row n = a^n
  double dt = 0.0;
};

/// N Crank-Nicolson steps with one factorization of the constant left-hand
/// matrix M_r/dt + (nu/2) S_r.
RomTrajectory cn_solve(const RomModel& model, const Eigen::VectorXd& a0, double dt,
                       int n_steps, CnForcing forcing = CnForcing::Average);

/// Errors e^n = interp(u(., t_n)) - modes_r a^n against the interpolated
/// exact solution.
struct RomErrorReport {
  Eigen::VectorXd per_step;  // ||e^n||_W for n = 1..N
  double max_w = 0.0;        // max of per_step
  double final_l2 = 0.0;     // ||e^N||_L2
  double energy = 0.0;       // dt * sum_n ||grad e^{n+1/2}||_L2^2
  Space w = Space::L2;
  double dt = 0.0;
};

RomErrorReport rom_errors(const RomTrajectory& traj, const RomModel& model,
                          const ManufacturedSolution& sol, Space w);

/// Measured ratio of max_k ||e^k||_L2^2 to its candidate bound.
/// NoDq denominator: (N+1) * sum_{i>r} lambda_i ||phi_i||_L2^2 + dt^4
///                   + sum_{i>r} lambda_i ||grad phi_i||_L2^2.
/// Dq denominator:   sum_{i>r} lambda_i ||phi_i - R_r phi_i||_L2^2 + dt^4.
/// The report must carry W = L2; the basis variant must match.
double rom_ratio(const RomErrorReport& report, const PodBasis& basis, int r,
                 RatioVariant variant);

/// CSV layout: header "t,a1,...,ar", one row per time step, %.17g.
void write_trajectory_csv(const RomTrajectory& traj, std::ostream& os);

}  // namespace podrom
