#include "podrom/pod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "podrom/projections.hpp"

namespace podrom {

CorrelationMatrix correlation_matrix(const SnapshotSet& snaps, Space space) {
  const Eigen::MatrixXd cols = snaps.all_columns();
  const SymTridiag g = gram_operator(snaps.mesh, space);
  Eigen::MatrixXd k = snaps.weight * (cols.transpose() * g.apply(cols));
  k = 0.5 * (k + k.transpose()).eval();
  return CorrelationMatrix{std::move(k), snaps.weight};
}

PodBasis compute_pod(const SnapshotSet& snaps, Space space) {
  const CorrelationMatrix corr = correlation_matrix(snaps, space);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr.k);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("compute_pod: eigensolver failed");
  }

  const auto m = corr.k.rows();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  // descending eigenvalues, stable on ties
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()[a] > es.eigenvalues()[b];
  });

  const double lambda1 = es.eigenvalues()[order.front()];
  if (!(lambda1 > 0.0)) {
    throw std::runtime_error("compute_pod: all snapshots are zero (rank 0)");
  }
  int rank = 0;
  while (rank < m && es.eigenvalues()[order[rank]] > kRankEps * lambda1) ++rank;

  PodBasis basis;
  basis.space = space;
  basis.dq = snaps.has_dq();
  basis.weight = snaps.weight;
  basis.mesh = snaps.mesh;
  basis.dt = snaps.dt;
  basis.T = snaps.T;
  basis.n_snapshot_steps = snaps.n_steps();
  basis.rank = rank;
  basis.eigenvalues.resize(rank);
  Eigen::MatrixXd z(m, rank);
  for (int i = 0; i < rank; ++i) {
    basis.eigenvalues[i] = es.eigenvalues()[order[i]];
    z.col(i) = es.eigenvectors().col(order[i]);
  }

  const Eigen::MatrixXd cols = snaps.all_columns();
  basis.modes = cols * z;
  for (int i = 0; i < rank; ++i) {
    basis.modes.col(i) *= std::sqrt(basis.weight / basis.eigenvalues[i]);
    // deterministic sign: largest-magnitude entry positive
    int jmax = 0;
    double amax = 0.0;
    for (int j = 0; j < basis.modes.rows(); ++j) {
      const double a = std::abs(basis.modes(j, i));
      if (a > amax) {
        amax = a;
        jmax = j;
      }
    }
    if (basis.modes(jmax, i) < 0.0) basis.modes.col(i) = -basis.modes.col(i);
  }
  return basis;
}

NodalField pod_project(const PodBasis& basis, int r, const NodalField& u) {
  return project(basis, r, u, ProjectorKind::PodOrthogonal);
}

IdentityPair total_error_identity(const SnapshotSet& snaps, const PodBasis& basis,
                                  int r, Space w, ProjectorKind projector) {
  if (r < 1 || r > basis.rank) {
    throw std::invalid_argument("total_error_identity: r out of range");
  }
  const SymTridiag gw = gram_operator(snaps.mesh, w);

  const Eigen::MatrixXd cols = snaps.all_columns();
  const Eigen::MatrixXd res = cols - project_columns(basis, r, cols, projector);
  IdentityPair id;
  id.lhs = snaps.weight * (res.cwiseProduct(gw.apply(res))).sum();

  id.rhs = 0.0;
  if (r < basis.rank) {
    const Eigen::MatrixXd tail = basis.modes.rightCols(basis.rank - r);
    Eigen::MatrixXd defect = tail;
    if (projector != ProjectorKind::PodOrthogonal) {
      defect -= project_columns(basis, r, tail, projector);
    }
    const Eigen::VectorXd wnorm2 =
        defect.cwiseProduct(gw.apply(defect)).colwise().sum();
    id.rhs = basis.eigenvalues.tail(basis.rank - r).dot(wnorm2);
  }
  return id;
}

void write_basis_csv(const PodBasis& basis, std::ostream& os) {
  char buf[40];
  os << "x_index";
  for (int i = 0; i < basis.rank; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", basis.eigenvalues[i]);
    os << ',' << buf;
  }
  os << "\n";
  for (int j = 0; j < basis.modes.rows(); ++j) {
    os << (j + 1);
    for (int i = 0; i < basis.rank; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", basis.modes(j, i));
      os << ',' << buf;
    }
    os << "\n";
  }
}

}  // namespace podrom
