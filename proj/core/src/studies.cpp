#include <cmath>
#include <sstream>
#include <stdexcept>

#include "podrom/experiments.hpp"

namespace podrom {

namespace {

int steps_for(double T, double dt) {
  const double steps = T / dt;
  const int n = static_cast<int>(std::round(steps));
  if (n < 1 || std::abs(steps - n) > 1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument("study: T/dt must be a positive integer");
  }
  return n;
}

Mesh1D mesh_for(const StudyConfig& cfg) {
  return build_mesh(static_cast<int>(std::round(1.0 / cfg.h)));
}

std::vector<bool> dq_cases(const StudyConfig& cfg) {
  if (cfg.dq) return {*cfg.dq};
  return {false, true};
}

const char* case_name(bool dq) { return dq ? "DQ" : "noDQ"; }

std::string dt_label(double dt) {
  const double inv = 1.0 / dt;
  std::ostringstream os;
  if (std::abs(inv - std::round(inv)) < 1e-9 * inv) {
    os << "1/" << static_cast<long>(std::round(inv));
  } else {
    os << dt;
  }
  return os.str();
}

std::string provenance_string(const StudyConfig& cfg, bool dq, double dt, int r) {
  std::ostringstream os;
  os << "example=" << (cfg.example == Example::Cex1 ? "cex1" : "cex2")
     << " k=" << cfg.k << " nu=" << cfg.nu << " T=" << cfg.T << " h=" << cfg.h
     << " space=" << (cfg.space == Space::L2 ? "l2" : "h1")
     << " case=" << case_name(dq);
  if (cfg.example == Example::Cex2) {
    os << " alpha=" << cfg.alpha << " delta=" << cfg.delta;
  }
  if (dt > 0.0) os << " dt=" << dt;
  if (r > 0) os << " r=" << r;
  os << " seed=" << cfg.seed;
  return os.str();
}

ManufacturedSolution solution_for(const StudyConfig& cfg, double dt) {
  if (cfg.example == Example::Cex1) {
    return cex1({cfg.k, cfg.nu});
  }
  return cex2({cfg.k, cfg.alpha, cfg.delta, cfg.nu}, dt);
}

InitialProjection ic_for(const StudyConfig& cfg, bool dq) {
  if (cfg.ic_kind) return *cfg.ic_kind;
  return dq ? InitialProjection::Ritz : InitialProjection::L2;
}

// the noDQ and DQ tables share the r value; default is r = N for cex1
int cex1_rank(const StudyConfig& cfg, int n_steps) {
  return cfg.r_list.empty() ? n_steps : cfg.r_list.front();
}

RomErrorReport run_rom_case(const StudyConfig& cfg, const ManufacturedSolution& sol,
                            const PodBasis& basis, const Mesh1D& mesh, int r,
                            bool dq, double dt, int rom_steps) {
  const RomModel model = assemble_rom(basis, r, cfg.nu, sol, mesh);
  const NodalField u0 = interpolate(sol.u0, mesh);
  const Eigen::VectorXd a0 = rom_initial_condition(basis, r, u0, ic_for(cfg, dq));
  const RomTrajectory traj = cn_solve(model, a0, dt, rom_steps, cfg.cn_forcing);
  return rom_errors(traj, model, sol, Space::L2);
}

}  // namespace

std::vector<TableReport> study_cex1_projection(const StudyConfig& cfg) {
  if (cfg.example != Example::Cex1) {
    throw std::invalid_argument("study_cex1_projection: config must use example=cex1");
  }
  validate_config(cfg);
  const Mesh1D mesh = mesh_for(cfg);
  const std::vector<double>& dts = cfg.dt_list;
  if (dts.empty()) throw std::invalid_argument("study: dt_list must not be empty");

  // the per-step tables probe a single dt: 1/16 when swept, else the first
  double dt_steps = dts.front();
  for (double dt : dts) {
    if (std::abs(dt - 1.0 / 16) < 1e-12) dt_steps = dt;
  }

  const ManufacturedSolution sol = solution_for(cfg, dt_steps);
  std::vector<TableReport> tables;
  for (bool dq : dq_cases(cfg)) {
    const int n = steps_for(cfg.T, dt_steps);
    const int r = cex1_rank(cfg, n);
    const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, n, dq);
    const PodBasis basis = compute_pod(snaps, cfg.space);
    const PointwiseErrorSeries series =
        pointwise_errors(snaps, basis, r, Space::L2, ProjectorKind::PodOrthogonal);

    TableReport steps;
    std::ostringstream label;
    label << "cex1 " << case_name(dq) << " pointwise projection error dt="
          << dt_label(dt_steps);
    steps.label = label.str();
    steps.headers = {"n", "proj_error_l2"};
    for (int i = 0; i < series.errors.size(); ++i) {
      steps.rows.push_back({static_cast<double>(i), series.errors[i]});
    }
    steps.provenance = provenance_string(cfg, dq, dt_steps, r);
    tables.push_back(std::move(steps));
  }

  for (bool dq : dq_cases(cfg)) {
    TableReport scaling;
    scaling.label = std::string("cex1 ") + case_name(dq) + " projection scaling factor";
    scaling.headers = {"dt", "c_proj"};
    for (double dt : dts) {
      const int n = steps_for(cfg.T, dt);
      const int r = cex1_rank(cfg, n);
      const ManufacturedSolution sol_dt = solution_for(cfg, dt);
      const SnapshotSet snaps = generate_snapshots(sol_dt, mesh, cfg.T, n, dq);
      const PodBasis basis = compute_pod(snaps, cfg.space);
      const PointwiseErrorSeries series =
          pointwise_errors(snaps, basis, r, Space::L2, ProjectorKind::PodOrthogonal);
      const double c = assumption_ratio(series, basis, r, Space::L2, n);
      scaling.rows.push_back({dt, c});
    }
    scaling.provenance = provenance_string(cfg, dq, 0.0, 0);
    tables.push_back(std::move(scaling));
  }
  return tables;
}

std::vector<TableReport> study_cex1_rom(const StudyConfig& cfg) {
  if (cfg.example != Example::Cex1) {
    throw std::invalid_argument("study_cex1_rom: config must use example=cex1");
  }
  validate_config(cfg);
  const Mesh1D mesh = mesh_for(cfg);
  if (cfg.dt_list.empty()) throw std::invalid_argument("study: dt_list must not be empty");

  std::vector<TableReport> tables;
  for (bool dq : dq_cases(cfg)) {
    TableReport table;
    std::ostringstream label;
    label << "cex1 " << case_name(dq) << " rom error ratio k=" << cfg.k;
    table.label = label.str();
    table.headers = {"dt", "c_rom"};
    for (double dt : cfg.dt_list) {
      const int n = steps_for(cfg.T, dt);
      const int r = cex1_rank(cfg, n);
      const ManufacturedSolution sol = solution_for(cfg, dt);
      const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, n, dq);
      const PodBasis basis = compute_pod(snaps, cfg.space);
      const RomErrorReport report = run_rom_case(cfg, sol, basis, mesh, r, dq, dt, n);
      const double ratio =
          rom_ratio(report, basis, r, dq ? RatioVariant::Dq : RatioVariant::NoDq);
      table.rows.push_back({dt, ratio});
    }
    table.provenance = provenance_string(cfg, dq, 0.0, 0);
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<TableReport> study_cex2(const StudyConfig& cfg) {
  if (cfg.example != Example::Cex2) {
    throw std::invalid_argument("study_cex2: config must use example=cex2");
  }
  validate_config(cfg);
  const Mesh1D mesh = mesh_for(cfg);
  if (cfg.dt_list.empty()) throw std::invalid_argument("study: dt_list must not be empty");

  std::vector<TableReport> tables;

  // projection scaling factors at r = r_proj, probed at t = t_r
  for (bool dq : dq_cases(cfg)) {
    TableReport table;
    std::ostringstream label;
    label << "cex2 " << case_name(dq) << " projection scaling factor r=" << cfg.r_proj;
    table.label = label.str();
    table.headers = {"dt", "c_proj"};
    for (double dt : cfg.dt_list) {
      const int n = steps_for(cfg.T, dt);
      const ManufacturedSolution sol = solution_for(cfg, dt);
      const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, n, dq);
      const PodBasis basis = compute_pod(snaps, cfg.space);
      const PointwiseErrorSeries series = pointwise_errors(
          snaps, basis, cfg.r_proj, Space::L2, ProjectorKind::PodOrthogonal);
      double c;
      if (dq) {
        c = assumption_ratio(series, basis, cfg.r_proj, Space::L2);
      } else {
        c = assumption_ratio(series, basis, cfg.r_proj, Space::L2, cfg.r_proj) /
            (n + 1.0);
      }
      table.rows.push_back({dt, c});
    }
    table.provenance = provenance_string(cfg, dq, 0.0, cfg.r_proj);
    tables.push_back(std::move(table));
  }

  // ROM error ratios at dt_rom over the shared r list; the basis uses the
  // whole [0, T] horizon, the errors only [0, rom_T]
  const double rom_horizon = cfg.rom_T > 0.0 ? cfg.rom_T : cfg.T;
  const int basis_steps = steps_for(cfg.T, cfg.dt_rom);
  const int rom_steps = steps_for(rom_horizon, cfg.dt_rom);
  const std::vector<int> ranks =
      cfg.r_list.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6} : cfg.r_list;
  for (bool dq : dq_cases(cfg)) {
    TableReport table;
    std::ostringstream label;
    label << "cex2 " << case_name(dq) << " rom error ratio dt=" << cfg.dt_rom;
    table.label = label.str();
    table.headers = {"r", "c_rom"};
    const ManufacturedSolution sol = solution_for(cfg, cfg.dt_rom);
    const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, basis_steps, dq);
    const PodBasis basis = compute_pod(snaps, cfg.space);
    for (int r : ranks) {
      const RomErrorReport report =
          run_rom_case(cfg, sol, basis, mesh, r, dq, cfg.dt_rom, rom_steps);
      const double ratio =
          rom_ratio(report, basis, r, dq ? RatioVariant::Dq : RatioVariant::NoDq);
      table.rows.push_back({static_cast<double>(r), ratio});
    }
    table.provenance = provenance_string(cfg, dq, cfg.dt_rom, 0);
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace podrom
