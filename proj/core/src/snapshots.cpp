#include "podrom/snapshots.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace podrom {

namespace {

constexpr double kPi = std::numbers::pi;

void check_integer_product(int k, double dt, const std::string& label) {
  const double kt = k * dt;
  if (dt <= 0.0 || std::abs(kt - std::round(kt)) > 1e-9 * std::max(1.0, kt) ||
      std::round(kt) < 1.0) {
    throw std::invalid_argument(
        label + ": dt = " + std::to_string(dt) + " violates k*dt in N (k = " +
        std::to_string(k) +
        "); snapshots must vanish at x = 1 to satisfy the homogeneous "
        "Dirichlet boundary condition");
  }
}

}  // namespace

ManufacturedSolution cex1(const Cex1Params& p) {
  if (p.k < 1) throw std::invalid_argument("cex1: k must be >= 1");
  const double k = p.k;
  const double nu = p.nu;
  ManufacturedSolution sol;
  sol.label = "cex1";
  sol.u = [k](double x, double t) { return std::sin((k * t + 1.0) * kPi * x); };
  // u_t = k*pi*x*cos((kt+1)*pi*x), u_xx = -((kt+1)*pi)^2 * sin((kt+1)*pi*x)
  sol.f = [k, nu](double x, double t) {
    const double w = (k * t + 1.0) * kPi;
    return k * kPi * x * std::cos(w * x) + nu * w * w * std::sin(w * x);
  };
  sol.u0 = [](double x) { return std::sin(kPi * x); };
  const int ki = p.k;
  sol.validate_dt = [ki](double dt) { check_integer_product(ki, dt, "cex1"); };
  return sol;
}

ManufacturedSolution cex2(const Cex2Params& p, double dt) {
  if (p.k < 1) throw std::invalid_argument("cex2: k must be >= 1");
  if (p.alpha <= 0.0 || p.delta <= 0.0) {
    throw std::invalid_argument("cex2: alpha and delta must be positive");
  }
  check_integer_product(p.k, dt, "cex2");
  const double k = p.k;
  const double nu = p.nu;
  const double alpha = p.alpha;
  const double delta = p.delta;
  // amplitude a(t) with a'(t) = -(alpha/(2*delta)) * a(t)
  auto amp = [alpha, delta](double t) {
    return std::exp(-0.5 * alpha * (1.0 + t / delta)) / std::sqrt(2.0 * delta);
  };
  ManufacturedSolution sol;
  sol.label = "cex2";
  sol.u = [k, amp](double x, double t) {
    return amp(t) * std::sin((k * t + 1.0) * kPi * x);
  };
  sol.f = [k, nu, alpha, delta, amp](double x, double t) {
    const double a = amp(t);
    const double w = (k * t + 1.0) * kPi;
    const double ut = -0.5 * (alpha / delta) * a * std::sin(w * x) +
                      a * k * kPi * x * std::cos(w * x);
    const double uxx = -a * w * w * std::sin(w * x);
    return ut - nu * uxx;
  };
  sol.u0 = [amp](double x) { return amp(0.0) * std::sin(kPi * x); };
  const int ki = p.k;
  sol.validate_dt = [ki](double d) { check_integer_product(ki, d, "cex2"); };
  return sol;
}

Cex2Spectrum cex2_spectrum(const Cex2Params& p, double dt, double T) {
  if (dt <= 0.0 || T <= 0.0) throw std::invalid_argument("cex2_spectrum: dt, T > 0");
  const double n_steps = T / dt;
  Cex2Spectrum s;
  s.rho = p.delta / dt;
  s.gamma = p.alpha * dt / p.delta;
  s.beta = std::exp(-p.alpha + p.alpha * dt / p.delta) /
           (4.0 * p.delta * (n_steps + 1.0));
  return s;
}

Eigen::MatrixXd SnapshotSet::all_columns() const {
  if (!has_dq()) return values;
  Eigen::MatrixXd cols(values.rows(), values.cols() + dq.cols());
  cols << values, dq;
  return cols;
}

Eigen::MatrixXd difference_quotients(const Eigen::MatrixXd& u, double dt) {
  if (u.cols() < 2) {
    throw std::invalid_argument("difference_quotients: need at least 2 columns");
  }
  if (dt <= 0.0) throw std::invalid_argument("difference_quotients: dt must be positive");
  return (u.rightCols(u.cols() - 1) - u.leftCols(u.cols() - 1)) / dt;
}

SnapshotSet generate_snapshots(const ManufacturedSolution& sol, const Mesh1D& mesh,
                               double T, int n_steps, bool with_dq) {
  if (n_steps < 1) throw std::invalid_argument("generate_snapshots: n_steps >= 1");
  if (T <= 0.0) throw std::invalid_argument("generate_snapshots: T > 0");
  const double dt = T / n_steps;
  if (sol.validate_dt) sol.validate_dt(dt);

  SnapshotSet snaps;
  snaps.mesh = mesh;
  snaps.dt = dt;
  snaps.T = T;
  snaps.values.resize(mesh.n_dof(), n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    const double t = n * dt;
    snaps.values.col(n) =
        interpolate([&](double x) { return sol.u(x, t); }, mesh).values;
  }
  if (with_dq) {
    snaps.dq = difference_quotients(snaps.values, dt);
    snaps.weight = 1.0 / (2.0 * n_steps + 1.0);
  } else {
    snaps.weight = 1.0 / (n_steps + 1.0);
  }
  return snaps;
}

SnapshotSet snapshot_set_from_matrix(const Eigen::MatrixXd& u, double dt,
                                     const Mesh1D& mesh, bool with_dq) {
  if (u.rows() != mesh.n_dof()) {
    throw std::invalid_argument("snapshot_set_from_matrix: row count must match mesh DOFs");
  }
  if (u.cols() < 1) throw std::invalid_argument("snapshot_set_from_matrix: need >= 1 column");
  if (!u.allFinite()) throw std::invalid_argument("snapshot_set_from_matrix: non-finite values");
  const int n_steps = static_cast<int>(u.cols()) - 1;
  SnapshotSet snaps;
  snaps.mesh = mesh;
  snaps.dt = dt;
  snaps.T = n_steps * dt;
  snaps.values = u;
  if (with_dq) {
    snaps.dq = difference_quotients(u, dt);
    snaps.weight = 1.0 / (2.0 * n_steps + 1.0);
  } else {
    snaps.weight = 1.0 / (n_steps + 1.0);
  }
  return snaps;
}

void write_snapshot_csv(const SnapshotSet& snaps, std::ostream& os) {
  os << "x_index";
  for (int n = 0; n < snaps.values.cols(); ++n) os << ",t" << n;
  os << "\n";
  char buf[40];
  for (int j = 0; j < snaps.values.rows(); ++j) {
    os << (j + 1);
    for (int n = 0; n < snaps.values.cols(); ++n) {
      std::snprintf(buf, sizeof buf, "%.17g", snaps.values(j, n));
      os << ',' << buf;
    }
    os << "\n";
  }
}

SnapshotSet read_snapshot_csv(std::istream& is, double dt) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x_index", 0) != 0) {
    throw std::invalid_argument("read_snapshot_csv: missing x_index header");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ls, cell, ',')) {
      if (first) {
        first = false;  // x_index column
        continue;
      }
      row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_snapshot_csv: no data rows");
  const auto n_cols = rows.front().size();
  Eigen::MatrixXd u(rows.size(), n_cols);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != n_cols) {
      throw std::invalid_argument("read_snapshot_csv: ragged rows");
    }
    for (std::size_t n = 0; n < n_cols; ++n) u(j, n) = rows[j][n];
  }
  const Mesh1D mesh = build_mesh(static_cast<int>(rows.size()) + 1);
  return snapshot_set_from_matrix(u, dt, mesh, false);
}

}  // namespace podrom
