#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "podrom/experiments.hpp"

namespace podrom {

namespace {

struct PropertyRow {
  std::string label;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

const char* space_name(Space s) { return s == Space::L2 ? "L2" : "H10"; }
const char* case_name(bool dq) { return dq ? "DQ" : "noDQ"; }

// Total weighted data energy in the W norm; the natural scale of the
// identity sums. Eigenvalue tails below machine accuracy relative to this
// scale cannot be resolved by a double-precision eigensolver.
double identity_scale(const PodBasis& basis, Space w) {
  return eigenvalue_tail(basis, 0, w);
}

// |lhs - rhs| <= tol*max(lhs, rhs) + floor, reported as a normalized margin.
double tolerance_margin(double lhs, double rhs, double tol, double floor) {
  return std::abs(lhs - rhs) / (tol * std::max(std::abs(lhs), std::abs(rhs)) + floor);
}

struct ExampleData {
  std::string name;
  ManufacturedSolution sol;
  double dt = 0.0;
  double T = 0.0;
  int n_steps = 0;
};

std::vector<ExampleData> property_examples(const StudyConfig& cfg) {
  std::vector<ExampleData> out;
  {
    ExampleData e;
    e.name = "cex1";
    e.sol = cex1({128, cfg.nu});
    e.dt = 1.0 / 16;
    e.T = 1.0;
    e.n_steps = 16;
    out.push_back(std::move(e));
  }
  {
    ExampleData e;
    e.name = "cex2";
    e.dt = 0.01;
    e.T = 0.2;
    e.n_steps = 20;
    e.sol = cex2({100, 1.0, 0.01, cfg.nu}, e.dt);
    out.push_back(std::move(e));
  }
  return out;
}

PropertyRow identity_property(const ExampleData& ex, const Mesh1D& mesh, bool dq,
                              Space h_space) {
  const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, dq);
  const PodBasis basis = compute_pod(snaps, h_space);
  PropertyRow row;
  std::ostringstream label;
  label << "total-error identity " << ex.name << " " << case_name(dq)
        << " H=" << space_name(h_space);
  row.label = label.str();
  row.bound = 1.0;
  for (Space w : {Space::L2, Space::H10}) {
    const double floor = 1e-10 * identity_scale(basis, w);
    for (ProjectorKind kind :
         {ProjectorKind::PodOrthogonal, ProjectorKind::Ritz, ProjectorKind::L2}) {
      for (int r = 1; r <= basis.rank; ++r) {
        const IdentityPair id = total_error_identity(snaps, basis, r, w, kind);
        const double margin = tolerance_margin(id.lhs, id.rhs, 1e-8, floor);
        row.observed = std::max(row.observed, margin);
      }
    }
  }
  row.pass = row.observed <= row.bound;
  return row;
}

PropertyRow sobolev_property(const StudyConfig& cfg, Space norm_space) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> pick_steps(2, 64);
  std::uniform_int_distribution<int> pick_elems(4, 64);
  std::uniform_real_distribution<double> pick_log_dt(-3.0, 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PropertyRow row;
  row.label = std::string("discrete Sobolev inequality ") + space_name(norm_space);
  row.bound = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_steps = pick_steps(rng);
    const Mesh1D mesh = build_mesh(pick_elems(rng));
    const double dt = std::pow(10.0, pick_log_dt(rng));
    Eigen::MatrixXd z(mesh.n_dof(), n_steps + 1);
    for (int c = 0; c <= n_steps; ++c) {
      for (int j = 0; j < mesh.n_dof(); ++j) z(j, c) = gauss(rng);
    }
    const SobolevCheck check = sobolev_check(z, mesh, dt, norm_space);
    if (check.rhs > 0.0) row.observed = std::max(row.observed, check.lhs / check.rhs);
    if (!check.holds) row.observed = std::max(row.observed, 2.0);
  }
  row.pass = row.observed <= row.bound * (1.0 + 1e-12);
  return row;
}

// max over r < s and all time indices of the pointwise DQ projection error
// over the eigenvalue tail, normalized by the bound constant 6*max(1,T^2).
double dq_pointwise_bound_worst(const SnapshotSet& snaps, const PodBasis& basis, Space w) {
  const double c_bound = 6.0 * std::max(1.0, snaps.T * snaps.T);
  const double scale = identity_scale(basis, w);
  double worst = 0.0;
  for (int r = 1; r < basis.rank; ++r) {
    const double tail = eigenvalue_tail(basis, r, w);
    if (tail < 1e-8 * scale) continue;  // below eigensolver resolution
    const PointwiseErrorSeries series =
        pointwise_errors(snaps, basis, r, w, ProjectorKind::PodOrthogonal);
    const double max_err = series.errors.maxCoeff();
    worst = std::max(worst, max_err * max_err / (c_bound * tail));
  }
  return worst;
}

PropertyRow dq_pointwise_bound_property(const ExampleData& ex, const Mesh1D& mesh, Space w) {
  const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, true);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  PropertyRow row;
  row.label = "DQ pointwise bound " + ex.name + " W=" + space_name(w);
  row.bound = 1.0;
  row.observed = dq_pointwise_bound_worst(snaps, basis, w);
  row.pass = row.observed <= row.bound;
  return row;
}

PropertyRow dq_pointwise_bound_random_property(const StudyConfig& cfg, Space w, int families) {
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_int_distribution<int> pick_steps(2, 24);
  std::uniform_int_distribution<int> pick_elems(4, 48);
  std::uniform_real_distribution<double> pick_log_dt(-2.0, 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PropertyRow row;
  row.label = std::string("DQ pointwise bound random W=") + space_name(w);
  row.bound = 1.0;
  for (int family = 0; family < families; ++family) {
    const int n_steps = pick_steps(rng);
    const Mesh1D mesh = build_mesh(pick_elems(rng));
    const double dt = std::pow(10.0, pick_log_dt(rng));
    Eigen::MatrixXd u(mesh.n_dof(), n_steps + 1);
    for (int c = 0; c <= n_steps; ++c) {
      for (int j = 0; j < mesh.n_dof(); ++j) u(j, c) = gauss(rng);
    }
    const SnapshotSet snaps = snapshot_set_from_matrix(u, dt, mesh, true);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    row.observed = std::max(row.observed, dq_pointwise_bound_worst(snaps, basis, w));
  }
  row.pass = row.observed <= row.bound;
  return row;
}

PropertyRow last_step_identity_property(const ExampleData& ex, const Mesh1D& mesh, Space w) {
  const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, false);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  PropertyRow row;
  row.label = "last-step projection identity " + ex.name + " W=" + space_name(w);
  row.bound = 0.01;
  const int n = ex.n_steps;
  const PointwiseErrorSeries series =
      pointwise_errors(snaps, basis, n, w, ProjectorKind::PodOrthogonal);
  const double lhs = series.errors[n] * series.errors[n];
  const double rhs = (n + 1.0) * eigenvalue_tail(basis, n, w);
  row.observed = std::abs(lhs / rhs - 1.0);
  row.pass = row.observed <= row.bound;
  return row;
}

struct OptimalityRows {
  PropertyRow ii_le_i;
  PropertyRow i_eq_ii_when_match;
  PropertyRow star_le_ii_dq;
};

OptimalityRows optimality_properties(const std::vector<ExampleData>& examples,
                                     const Mesh1D& mesh) {
  OptimalityRows rows;
  rows.ii_le_i.label = "optimal-II below optimal-I";
  rows.ii_le_i.bound = 1e-10;
  rows.i_eq_ii_when_match.label = "optimal-I equals optimal-II when W matches H";
  rows.i_eq_ii_when_match.bound = 1.0;
  rows.star_le_ii_dq.label = "best pointwise error below DQ tail bound";
  rows.star_le_ii_dq.bound = 1.0;

  for (const auto& ex : examples) {
    for (bool dq : {false, true}) {
      const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, dq);
      for (Space h_space : {Space::L2, Space::H10}) {
        const PodBasis basis = compute_pod(snaps, h_space);
        const double c_bound = 6.0 * std::max(1.0, ex.T * ex.T);
        for (Space w : {Space::L2, Space::H10}) {
          const double scale = identity_scale(basis, w);
          for (int r = 1; r < basis.rank; ++r) {
            const OptimalityQuantities q = optimality_quantities(snaps, basis, r, w);
            if (q.lambda_i > 0.0) {
              rows.ii_le_i.observed = std::max(
                  rows.ii_le_i.observed, (q.lambda_ii - q.lambda_i) / q.lambda_i);
            }
            if (w == h_space) {
              const double margin = tolerance_margin(q.lambda_i, q.lambda_ii, 1e-10,
                                                     1e-13 * scale);
              rows.i_eq_ii_when_match.observed =
                  std::max(rows.i_eq_ii_when_match.observed, margin);
            }
            if (dq && q.lambda_ii >= 1e-8 * scale) {
              rows.star_le_ii_dq.observed = std::max(
                  rows.star_le_ii_dq.observed, q.lambda_star / (c_bound * q.lambda_ii));
            }
          }
        }
      }
    }
  }
  rows.ii_le_i.pass = rows.ii_le_i.observed <= rows.ii_le_i.bound;
  rows.i_eq_ii_when_match.pass =
      rows.i_eq_ii_when_match.observed <= rows.i_eq_ii_when_match.bound;
  rows.star_le_ii_dq.pass = rows.star_le_ii_dq.observed <= rows.star_le_ii_dq.bound;
  return rows;
}

PropertyRow worst_case_property(const std::vector<ExampleData>& examples,
                                const Mesh1D& mesh) {
  PropertyRow row;
  row.label = "noDQ worst-case scaling below N+1";
  row.bound = 1.0 + 1e-8;
  for (const auto& ex : examples) {
    const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, false);
    const PodBasis basis = compute_pod(snaps, Space::L2);
    for (Space w : {Space::L2, Space::H10}) {
      const double scale = identity_scale(basis, w);
      for (int r = 1; r < basis.rank; ++r) {
        if (eigenvalue_tail(basis, r, w) < 1e-8 * scale) continue;
        const PointwiseErrorSeries series =
            pointwise_errors(snaps, basis, r, w, ProjectorKind::PodOrthogonal);
        const double c = assumption_ratio(series, basis, r, w);
        row.observed = std::max(row.observed, c / (ex.n_steps + 1.0));
      }
    }
  }
  row.pass = row.observed <= row.bound;
  return row;
}

PropertyRow monotonicity_property(const ExampleData& ex, const Mesh1D& mesh) {
  const SnapshotSet snaps = generate_snapshots(ex.sol, mesh, ex.T, ex.n_steps, false);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  PropertyRow row;
  row.label = "total error non-increasing in r (" + ex.name + ")";
  row.bound = 1e-12;
  const double scale = identity_scale(basis, Space::L2);
  double prev =
      total_error_identity(snaps, basis, 1, Space::L2, ProjectorKind::PodOrthogonal).lhs;
  for (int r = 2; r <= basis.rank; ++r) {
    const double cur =
        total_error_identity(snaps, basis, r, Space::L2, ProjectorKind::PodOrthogonal).lhs;
    row.observed = std::max(row.observed, (cur - prev) / scale);
    prev = cur;
  }
  row.pass = row.observed <= row.bound;
  return row;
}

PropertyRow reorder_property(const StudyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PropertyRow row;
  row.label = "eigenvalues invariant under column reordering";
  row.bound = 1e-10;
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh1D mesh = build_mesh(32);
    const int n_cols = 9;
    Eigen::MatrixXd u(mesh.n_dof(), n_cols);
    for (int c = 0; c < n_cols; ++c) {
      for (int j = 0; j < mesh.n_dof(); ++j) u(j, c) = gauss(rng);
    }
    std::vector<int> perm(n_cols);
    for (int i = 0; i < n_cols; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd shuffled(u.rows(), n_cols);
    for (int i = 0; i < n_cols; ++i) shuffled.col(i) = u.col(perm[i]);

    const PodBasis a = compute_pod(snapshot_set_from_matrix(u, 0.1, mesh, false),
                                   Space::L2);
    const PodBasis b = compute_pod(snapshot_set_from_matrix(shuffled, 0.1, mesh, false),
                                   Space::L2);
    const int n = std::min(a.rank, b.rank);
    const double lambda1 = a.eigenvalues[0];
    for (int i = 0; i < n; ++i) {
      row.observed = std::max(
          row.observed, std::abs(a.eigenvalues[i] - b.eigenvalues[i]) / lambda1);
    }
    if (a.rank != b.rank) row.observed = std::max(row.observed, 1.0);
  }
  row.pass = row.observed <= row.bound;
  return row;
}

}  // namespace

TableReport run_property_suite(const StudyConfig& cfg) {
  const Mesh1D mesh = build_mesh(static_cast<int>(std::round(1.0 / cfg.h)));
  const std::vector<ExampleData> examples = property_examples(cfg);

  std::vector<PropertyRow> rows;
  for (const auto& ex : examples) {
    for (bool dq : {false, true}) {
      for (Space h_space : {Space::L2, Space::H10}) {
        rows.push_back(identity_property(ex, mesh, dq, h_space));
      }
    }
  }
  rows.push_back(sobolev_property(cfg, Space::L2));
  rows.push_back(sobolev_property(cfg, Space::H10));
  for (const auto& ex : examples) {
    for (Space w : {Space::L2, Space::H10}) {
      rows.push_back(dq_pointwise_bound_property(ex, mesh, w));
    }
  }
  rows.push_back(dq_pointwise_bound_random_property(cfg, Space::L2, 100));
  rows.push_back(dq_pointwise_bound_random_property(cfg, Space::H10, 100));
  for (const auto& ex : examples) {
    for (Space w : {Space::L2, Space::H10}) {
      rows.push_back(last_step_identity_property(ex, mesh, w));
    }
  }
  const OptimalityRows opt = optimality_properties(examples, mesh);
  rows.push_back(opt.ii_le_i);
  rows.push_back(opt.i_eq_ii_when_match);
  rows.push_back(opt.star_le_ii_dq);
  rows.push_back(worst_case_property(examples, mesh));
  for (const auto& ex : examples) rows.push_back(monotonicity_property(ex, mesh));
  rows.push_back(reorder_property(cfg));

  TableReport report;
  report.label = "property suite";
  report.headers = {"property", "observed", "bound", "pass"};
  std::ostringstream prov;
  prov << "h=" << cfg.h << " seed=" << cfg.seed;
  report.provenance = prov.str();
  for (const auto& row : rows) {
    report.row_labels.push_back(row.label);
    report.rows.push_back({row.observed, row.bound, row.pass ? 1.0 : 0.0});
  }
  return report;
}

bool property_suite_passed(const TableReport& report) {
  for (const auto& row : report.rows) {
    if (row.empty() || row.back() != 1.0) return false;
  }
  return true;
}

}  // namespace podrom
