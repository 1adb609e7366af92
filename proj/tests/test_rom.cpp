#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "podrom/rom.hpp"

using namespace podrom;

namespace {

constexpr double kPi = std::numbers::pi;

ManufacturedSolution smooth_solution() {
  ManufacturedSolution sol;
  sol.label = "decaying sine";
  sol.u = [](double x, double t) { return std::exp(-t) * std::sin(kPi * x); };
  sol.f = [](double x, double t) {
    return (kPi * kPi - 1.0) * std::exp(-t) * std::sin(kPi * x);
  };
  sol.u0 = [](double x) { return std::sin(kPi * x); };
  return sol;
}

ManufacturedSolution zero_forcing(ManufacturedSolution sol) {
  sol.f = [](double, double) { return 0.0; };
  return sol;
}

}  // namespace

TEST_CASE("assemble_rom") {
  const Mesh1D mesh = build_mesh(512);
  const ManufacturedSolution sol = cex1({128, 1.0});
  const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 8, false);

  SUBCASE("L2 basis gives an identity reduced mass matrix") {
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const RomModel model = assemble_rom(basis, 1, 1.0, sol, mesh);
    CHECK(model.mass_r(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.stiffness_r(0, 0) > 0.0);

    const RomModel bigger = assemble_rom(basis, 5, 1.0, sol, mesh);
    CHECK((bigger.mass_r - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((bigger.mass_r - bigger.mass_r.transpose()).cwiseAbs().maxCoeff() <=
          1e-14 * bigger.mass_r.cwiseAbs().maxCoeff());
    CHECK((bigger.stiffness_r - bigger.stiffness_r.transpose())
              .cwiseAbs()
              .maxCoeff() <= 1e-14 * bigger.stiffness_r.cwiseAbs().maxCoeff());
  }

  SUBCASE("H10 basis gives an identity reduced stiffness matrix") {
    const PodBasis basis = compute_pod(snaps, Space::H10);
    const RomModel model = assemble_rom(basis, 4, 1.0, sol, mesh);
    CHECK((model.stiffness_r - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-10);
  }

  const PodBasis basis = compute_pod(snaps, Space::L2);
  CHECK_THROWS_AS(assemble_rom(basis, 0, 1.0, sol, mesh), std::invalid_argument);
  CHECK_THROWS_AS(assemble_rom(basis, basis.rank + 1, 1.0, sol, mesh),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_rom(basis, 1, 0.0, sol, mesh), std::invalid_argument);
}

TEST_CASE("rom_initial_condition") {
  const Mesh1D mesh = build_mesh(512);
  const ManufacturedSolution sol = cex1({128, 1.0});
  const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 8, false);
  const PodBasis basis = compute_pod(snaps, Space::L2);

  SUBCASE("exact recovery inside the span") {
    Eigen::VectorXd coeff(3);
    coeff << 0.3, -1.2, 2.0;
    const NodalField u0{basis.modes.leftCols(3) * coeff, mesh};
    for (InitialProjection kind : {InitialProjection::L2, InitialProjection::Ritz}) {
      const Eigen::VectorXd c = rom_initial_condition(basis, 3, u0, kind);
      CHECK((c - coeff).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("L2 coefficients are the mode inner products") {
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd c =
        rom_initial_condition(basis, 4, u0, InitialProjection::L2);
    const SymTridiag m = mass_matrix(mesh);
    for (int i = 0; i < 4; ++i) {
      CHECK(c[i] == doctest::Approx(basis.modes.col(i).dot(m.apply(u0.values)))
                        .epsilon(1e-12));
    }
  }

  SUBCASE("Ritz coefficients minimize the H10 error") {
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd c =
        rom_initial_condition(basis, 8, u0, InitialProjection::Ritz);
    const NodalField direct = project(basis, 8, u0, ProjectorKind::Ritz);
    CHECK((basis.modes.leftCols(8) * c - direct.values).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("cn_solve") {
  const Mesh1D mesh = build_mesh(512);
  const ManufacturedSolution sol = smooth_solution();
  const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 8, false);
  const PodBasis basis = compute_pod(snaps, Space::L2);

  SUBCASE("zero forcing and zero start stay zero") {
    const RomModel model = assemble_rom(basis, 1, 1.0, zero_forcing(sol), mesh);
    const RomTrajectory traj =
        cn_solve(model, Eigen::VectorXd::Zero(1), 0.1, 10);
    CHECK(traj.coeffs.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("scalar step matches the closed-form recurrence") {
    const RomModel model = assemble_rom(basis, 1, 1.0, zero_forcing(sol), mesh);
    const double sigma = model.stiffness_r(0, 0);
    const double dt = 0.05;
    Eigen::VectorXd a0(1);
    a0 << 2.5;
    const RomTrajectory traj = cn_solve(model, a0, dt, 3);
    const double factor = (1.0 / dt - 0.5 * sigma) / (1.0 / dt + 0.5 * sigma);
    double expected = 2.5;
    for (int n = 1; n <= 3; ++n) {
      expected *= factor;
      CHECK(traj.coeffs(n, 0) == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  SUBCASE("zero-forcing energy is non-increasing for every dt") {
    const RomModel model =
        assemble_rom(basis, basis.rank, 1.0, zero_forcing(sol), mesh);
    Eigen::VectorXd a0 = Eigen::VectorXd::Ones(basis.rank);
    for (double dt : {0.01, 0.5, 10.0}) {
      const RomTrajectory traj = cn_solve(model, a0, dt, 30);
      double prev = 1e300;
      for (int n = 0; n <= 30; ++n) {
        const Eigen::VectorXd a = traj.coeffs.row(n).transpose();
        const double energy = a.dot(model.mass_r * a);
        CHECK(energy <= prev * (1 + 1e-12));
        prev = energy;
      }
    }
  }

  SUBCASE("midpoint forcing is a distinct second-order variant") {
    const RomModel model = assemble_rom(basis, basis.rank, 1.0, sol, mesh);
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd a0 = rom_initial_condition(basis, basis.rank, u0,
                                                     InitialProjection::L2);
    const RomTrajectory avg = cn_solve(model, a0, 0.125, 8, CnForcing::Average);
    const RomTrajectory mid = cn_solve(model, a0, 0.125, 8, CnForcing::Midpoint);
    CHECK((avg.coeffs - mid.coeffs).cwiseAbs().maxCoeff() > 0.0);

    double prev_err = 0.0;
    for (int n : {8, 16, 32}) {
      const RomTrajectory traj =
          cn_solve(model, a0, 1.0 / n, n, CnForcing::Midpoint);
      const double err = rom_errors(traj, model, sol, Space::L2).max_w;
      if (prev_err > 0.0) CHECK(std::log2(prev_err / err) > 1.7);
      prev_err = err;
    }
  }

  SUBCASE("second-order convergence on a smooth solution") {
    // full basis, so the max error is the Crank-Nicolson time error
    const Mesh1D fine = build_mesh(4096);
    double prev_err = 0.0;
    for (int n : {8, 16, 32}) {
      const SnapshotSet fine_snaps = generate_snapshots(sol, fine, 1.0, n, false);
      const PodBasis fine_basis = compute_pod(fine_snaps, Space::L2);
      const RomModel model =
          assemble_rom(fine_basis, fine_basis.rank, 1.0, sol, fine);
      const NodalField u0 = interpolate(sol.u0, fine);
      const Eigen::VectorXd a0 = rom_initial_condition(
          fine_basis, fine_basis.rank, u0, InitialProjection::L2);
      const RomTrajectory traj = cn_solve(model, a0, 1.0 / n, n);
      const RomErrorReport report = rom_errors(traj, model, sol, Space::L2);
      if (prev_err > 0.0) {
        const double rate = std::log2(prev_err / report.max_w);
        CHECK(rate == doctest::Approx(2.0).epsilon(0.05));
      }
      prev_err = report.max_w;
    }
  }

  const RomModel model = assemble_rom(basis, 1, 1.0, sol, mesh);
  CHECK_THROWS_AS(cn_solve(model, Eigen::VectorXd::Zero(1), 0.1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cn_solve(model, Eigen::VectorXd::Zero(1), -0.1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(cn_solve(model, Eigen::VectorXd::Zero(2), 0.1, 3),
                  std::invalid_argument);
}

TEST_CASE("rom_errors") {
  const Mesh1D mesh = build_mesh(256);

  SUBCASE("zero solution with a zero trajectory reports zeros") {
    ManufacturedSolution zero;
    zero.u = [](double, double) { return 0.0; };
    zero.f = [](double, double) { return 0.0; };
    zero.u0 = [](double) { return 0.0; };
    const ManufacturedSolution sol = smooth_solution();
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 4, false);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const RomModel model = assemble_rom(basis, 1, 1.0, zero, mesh);
    RomTrajectory traj;
    traj.dt = 0.25;
    traj.coeffs = Eigen::MatrixXd::Zero(5, 1);
    const RomErrorReport report = rom_errors(traj, model, zero, Space::L2);
    CHECK(report.max_w == 0.0);
    CHECK(report.final_l2 == 0.0);
    CHECK(report.energy == 0.0);
  }

  SUBCASE("trajectory and model must agree") {
    const ManufacturedSolution sol = smooth_solution();
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 4, false);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const RomModel model = assemble_rom(basis, 1, 1.0, sol, mesh);
    RomTrajectory traj;
    traj.dt = 0.25;
    traj.coeffs = Eigen::MatrixXd::Zero(5, 2);
    CHECK_THROWS_AS(rom_errors(traj, model, sol, Space::L2), std::invalid_argument);
  }
}

TEST_CASE("rom_ratio against the reference rows") {
  const Mesh1D mesh = build_mesh(4096);

  SUBCASE("first example, noDQ, dt = 1/16") {
    const ManufacturedSolution sol = cex1({128, 1.0});
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, 16, false);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const RomModel model = assemble_rom(basis, 16, 1.0, sol, mesh);
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd a0 =
        rom_initial_condition(basis, 16, u0, InitialProjection::L2);
    const RomTrajectory traj = cn_solve(model, a0, 1.0 / 16, 16);
    const RomErrorReport report = rom_errors(traj, model, sol, Space::L2);
    const double ratio = rom_ratio(report, basis, 16, RatioVariant::NoDq);
    CHECK(ratio > 1.0e-4 / 3);
    CHECK(ratio < 1.0e-4 * 3);

    CHECK_THROWS_AS(rom_ratio(report, basis, 16, RatioVariant::Dq),
                    std::invalid_argument);
    RomErrorReport h1 = report;
    h1.w = Space::H10;
    CHECK_THROWS_AS(rom_ratio(h1, basis, 16, RatioVariant::NoDq),
                    std::invalid_argument);
  }

  SUBCASE("second example, DQ, dt = 0.01, r = 1") {
    const ManufacturedSolution sol = cex2({100, 1.0, 0.01, 1.0}, 0.01);
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 0.2, 20, true);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const RomModel model = assemble_rom(basis, 1, 1.0, sol, mesh);
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd a0 =
        rom_initial_condition(basis, 1, u0, InitialProjection::Ritz);
    const RomTrajectory traj = cn_solve(model, a0, 0.01, 5);
    const RomErrorReport report = rom_errors(traj, model, sol, Space::L2);
    const double ratio = rom_ratio(report, basis, 1, RatioVariant::Dq);
    CHECK(ratio > 2.9e-3 / 3);
    CHECK(ratio < 2.9e-3 * 3);
  }

  SUBCASE("second example, noDQ, dt = 0.01, ratios bounded below") {
    const ManufacturedSolution sol = cex2({100, 1.0, 0.01, 1.0}, 0.01);
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 0.2, 20, false);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    const NodalField u0 = interpolate(sol.u0, mesh);
    for (int r = 1; r <= 6; ++r) {
      const RomModel model = assemble_rom(basis, r, 1.0, sol, mesh);
      const Eigen::VectorXd a0 =
          rom_initial_condition(basis, r, u0, InitialProjection::L2);
      const RomTrajectory traj = cn_solve(model, a0, 0.01, 5);
      const RomErrorReport report = rom_errors(traj, model, sol, Space::L2);
      CHECK(rom_ratio(report, basis, r, RatioVariant::NoDq) > 9e-2);
    }
  }
}

namespace {

// H10-norm analogue of the DQ ratio: max ||grad e^k||^2 over the tail sum
// of lambda_i (||phi_i - R_r phi_i||^2 + ||grad(phi_i - R_r phi_i)||^2)
// plus dt^4
double h1_dq_ratio(const RomErrorReport& h1_report, const PodBasis& basis, int r,
                   double dt) {
  const Eigen::MatrixXd tail = basis.modes.rightCols(basis.rank - r);
  const Eigen::MatrixXd defect =
      tail - project_columns(basis, r, tail, ProjectorKind::Ritz);
  const SymTridiag m = mass_matrix(basis.mesh);
  const SymTridiag s = stiffness_matrix(basis.mesh);
  const Eigen::VectorXd l2 = defect.cwiseProduct(m.apply(defect)).colwise().sum();
  const Eigen::VectorXd h1 = defect.cwiseProduct(s.apply(defect)).colwise().sum();
  const double denom =
      basis.eigenvalues.tail(basis.rank - r).dot((l2 + h1).eval()) +
      std::pow(dt, 4);
  return h1_report.max_w * h1_report.max_w / denom;
}

}  // namespace

TEST_CASE("DQ error ratios stay bounded over the study grids") {
  const Mesh1D mesh = build_mesh(4096);

  // per study: one configuration-independent constant bounds every cell,
  // and the L2 ratio stops growing under dt refinement
  struct Sweep {
    int k;
    std::vector<double> dts;
    double l2_bound;
    double h1_bound;
  };
  for (const Sweep& sweep :
       {Sweep{8, {0.5, 0.25, 0.125}, 4.0, 5.0},
        Sweep{128, {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125}, 5.0, 75.0}}) {
    const ManufacturedSolution sol = cex1({sweep.k, 1.0});
    std::vector<double> l2_ratios;
    for (double dt : sweep.dts) {
      const int n = static_cast<int>(std::round(1.0 / dt));
      const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, n, true);
      const PodBasis basis = compute_pod(snaps, Space::L2);
      const RomModel model = assemble_rom(basis, n, 1.0, sol, mesh);
      const NodalField u0 = interpolate(sol.u0, mesh);
      const Eigen::VectorXd a0 =
          rom_initial_condition(basis, n, u0, InitialProjection::Ritz);
      const RomTrajectory traj = cn_solve(model, a0, dt, n);
      const RomErrorReport l2_report = rom_errors(traj, model, sol, Space::L2);
      const RomErrorReport h1_report = rom_errors(traj, model, sol, Space::H10);
      CHECK(l2_report.max_w == doctest::Approx(l2_report.per_step.maxCoeff()));
      l2_ratios.push_back(rom_ratio(l2_report, basis, n, RatioVariant::Dq));
      CHECK(l2_ratios.back() < sweep.l2_bound);
      CHECK(h1_dq_ratio(h1_report, basis, n, dt) < sweep.h1_bound);
    }
    const std::size_t last = l2_ratios.size() - 1;
    CHECK(l2_ratios[last] < 1.25 * l2_ratios[last - 1]);
  }

  // fixed dt, rank sweep
  const ManufacturedSolution sol = cex2({100, 1.0, 0.01, 1.0}, 0.01);
  const SnapshotSet snaps = generate_snapshots(sol, mesh, 0.2, 20, true);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  for (int r = 1; r <= 6; ++r) {
    const RomModel model = assemble_rom(basis, r, 1.0, sol, mesh);
    const NodalField u0 = interpolate(sol.u0, mesh);
    const Eigen::VectorXd a0 =
        rom_initial_condition(basis, r, u0, InitialProjection::Ritz);
    const RomTrajectory traj = cn_solve(model, a0, 0.01, 5);
    const RomErrorReport l2_report = rom_errors(traj, model, sol, Space::L2);
    const RomErrorReport h1_report = rom_errors(traj, model, sol, Space::H10);
    CHECK(rom_ratio(l2_report, basis, r, RatioVariant::Dq) < 0.05);
    CHECK(h1_dq_ratio(h1_report, basis, r, 0.01) < 0.01);
  }
}

TEST_CASE("trajectory CSV export") {
  RomTrajectory traj;
  traj.dt = 0.5;
  traj.coeffs.resize(3, 2);
  traj.coeffs << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,a1,a2");
  std::getline(is, line);
  CHECK(line == "0,1,2");
  std::getline(is, line);
  CHECK(line == "0.5,3,4");
}
