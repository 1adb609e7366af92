#include "podrom/rom.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace podrom {

Eigen::VectorXd RomModel::load(double t) const {
  const NodalField fh = interpolate([&](double x) { return forcing(x, t); }, mesh);
  return modes_r.transpose() * mass_matrix(mesh).apply(fh.values);
}

RomModel assemble_rom(const PodBasis& basis, int r, double nu,
                      const ManufacturedSolution& sol, const Mesh1D& mesh) {
  if (r < 1 || r > basis.rank) {
    throw std::invalid_argument("assemble_rom: r out of range");
  }
  if (nu <= 0.0) throw std::invalid_argument("assemble_rom: nu must be positive");
  if (mesh != basis.mesh) throw std::invalid_argument("assemble_rom: mesh mismatch");

  RomModel model;
  model.r = r;
  model.nu = nu;
  model.mesh = mesh;
  model.forcing = sol.f;
  model.modes_r = basis.modes.leftCols(r);

  const auto phi = model.modes_r;
  Eigen::MatrixXd mr = phi.transpose() * mass_matrix(mesh).apply(phi);
  Eigen::MatrixXd sr = phi.transpose() * stiffness_matrix(mesh).apply(phi);
  model.mass_r = 0.5 * (mr + mr.transpose());
  model.stiffness_r = 0.5 * (sr + sr.transpose());

  if (Eigen::LLT<Eigen::MatrixXd>(model.mass_r).info() != Eigen::Success ||
      Eigen::LLT<Eigen::MatrixXd>(model.stiffness_r).info() != Eigen::Success) {
    throw std::runtime_error("assemble_rom: reduced operators not positive definite");
  }
  return model;
}

Eigen::VectorXd rom_initial_condition(const PodBasis& basis, int r,
                                      const NodalField& u0, InitialProjection kind) {
  const ProjectorKind proj =
      kind == InitialProjection::L2 ? ProjectorKind::L2 : ProjectorKind::Ritz;
  return projection_coefficients(basis, r, u0.values, proj);
}

RomTrajectory cn_solve(const RomModel& model, const Eigen::VectorXd& a0, double dt,
                       int n_steps, CnForcing forcing) {
  if (n_steps < 1) throw std::invalid_argument("cn_solve: n_steps >= 1");
  if (dt <= 0.0) throw std::invalid_argument("cn_solve: dt must be positive");
  if (a0.size() != model.r) throw std::invalid_argument("cn_solve: a0 size mismatch");

  const Eigen::MatrixXd lhs = model.mass_r / dt + 0.5 * model.nu * model.stiffness_r;
  const Eigen::MatrixXd rhs_op = model.mass_r / dt - 0.5 * model.nu * model.stiffness_r;
  Eigen::LLT<Eigen::MatrixXd> llt(lhs);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("cn_solve: left-hand matrix not positive definite");
  }

  RomTrajectory traj;
  traj.dt = dt;
  traj.coeffs.resize(n_steps + 1, model.r);
  traj.coeffs.row(0) = a0.transpose();

  Eigen::VectorXd a = a0;
  Eigen::VectorXd load_prev;
  if (forcing == CnForcing::Average) load_prev = model.load(0.0);
  for (int n = 0; n < n_steps; ++n) {
    Eigen::VectorXd half_load;
    if (forcing == CnForcing::Average) {
      Eigen::VectorXd load_next = model.load((n + 1) * dt);
      half_load = 0.5 * (load_prev + load_next);
      load_prev = std::move(load_next);
    } else {
      half_load = model.load((n + 0.5) * dt);
    }
    a = llt.solve(rhs_op * a + half_load);
    traj.coeffs.row(n + 1) = a.transpose();
  }
  return traj;
}

RomErrorReport rom_errors(const RomTrajectory& traj, const RomModel& model,
                          const ManufacturedSolution& sol, Space w) {
  const int n_steps = static_cast<int>(traj.coeffs.rows()) - 1;
  if (n_steps < 1 || traj.coeffs.cols() != model.r) {
    throw std::invalid_argument("rom_errors: trajectory/model mismatch");
  }
  const Mesh1D& mesh = model.mesh;
  const double dt = traj.dt;

  Eigen::MatrixXd err(mesh.n_dof(), n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    const NodalField exact =
        interpolate([&](double x) { return sol.u(x, n * dt); }, mesh);
    err.col(n) = exact.values - model.modes_r * traj.coeffs.row(n).transpose();
  }

  const SymTridiag gw = gram_operator(mesh, w);
  const Eigen::VectorXd wnorm2 = err.cwiseProduct(gw.apply(err)).colwise().sum();

  RomErrorReport report;
  report.w = w;
  report.dt = dt;
  report.per_step = wnorm2.tail(n_steps).cwiseSqrt();
  report.max_w = report.per_step.maxCoeff();

  const SymTridiag m = mass_matrix(mesh);
  report.final_l2 = std::sqrt(err.col(n_steps).dot(m.apply(err.col(n_steps))));

  const SymTridiag s = stiffness_matrix(mesh);
  const Eigen::MatrixXd mid =
      0.5 * (err.rightCols(n_steps) + err.leftCols(n_steps));
  report.energy = dt * mid.cwiseProduct(s.apply(mid)).sum();
  return report;
}

double rom_ratio(const RomErrorReport& report, const PodBasis& basis, int r,
                 RatioVariant variant) {
  if (report.w != Space::L2) {
    throw std::invalid_argument("rom_ratio: report must carry L2 per-step norms");
  }
  if (r >= basis.rank) throw std::invalid_argument("rom_ratio: requires r < rank");
  if ((variant == RatioVariant::Dq) != basis.dq) {
    throw std::invalid_argument("rom_ratio: ratio variant does not match the basis");
  }
  const double dt4 = std::pow(report.dt, 4);
  double denom = 0.0;
  if (variant == RatioVariant::NoDq) {
    const double n_plus_1 = basis.n_snapshot_steps + 1.0;
    denom = n_plus_1 * eigenvalue_tail(basis, r, Space::L2) + dt4 +
            eigenvalue_tail(basis, r, Space::H10);
  } else {
    const Eigen::MatrixXd tail = basis.modes.rightCols(basis.rank - r);
    const Eigen::MatrixXd defect =
        tail - project_columns(basis, r, tail, ProjectorKind::Ritz);
    const SymTridiag m = mass_matrix(basis.mesh);
    const Eigen::VectorXd l2norm2 =
        defect.cwiseProduct(m.apply(defect)).colwise().sum();
    denom = basis.eigenvalues.tail(basis.rank - r).dot(l2norm2) + dt4;
  }
  if (denom < 1e-300) throw std::invalid_argument("rom_ratio: zero denominator");
  return report.max_w * report.max_w / denom;
}

void write_trajectory_csv(const RomTrajectory& traj, std::ostream& os) {
  os << "t";
  for (int i = 0; i < traj.coeffs.cols(); ++i) os << ",a" << (i + 1);
  os << "\n";
  char buf[40];
  for (int n = 0; n < traj.coeffs.rows(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", n * traj.dt);
    os << buf;
    for (int i = 0; i < traj.coeffs.cols(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.coeffs(n, i));
      os << ',' << buf;
    }
    os << "\n";
  }
}

}  // namespace podrom
