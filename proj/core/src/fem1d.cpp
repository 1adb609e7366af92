#include "podrom/fem1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace podrom {

Mesh1D build_mesh(int n_elems) {
  if (n_elems < 2) {
    throw std::invalid_argument("build_mesh: n_elems must be >= 2, got " +
                                std::to_string(n_elems));
  }
  return Mesh1D{n_elems, 1.0 / n_elems};
}

Eigen::MatrixXd SymTridiag::dense() const {
  const auto n = diag.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.diagonal() = diag;
  a.diagonal(1) = off;
  a.diagonal(-1) = off;
  return a;
}

SymTridiag mass_matrix(const Mesh1D& mesh) {
  const int n = mesh.n_dof();
  SymTridiag m;
  m.diag = Eigen::VectorXd::Constant(n, 2.0 * mesh.h / 3.0);
  m.off = Eigen::VectorXd::Constant(n - 1, mesh.h / 6.0);
  return m;
}

SymTridiag stiffness_matrix(const Mesh1D& mesh) {
  const int n = mesh.n_dof();
  SymTridiag s;
  s.diag = Eigen::VectorXd::Constant(n, 2.0 / mesh.h);
  s.off = Eigen::VectorXd::Constant(n - 1, -1.0 / mesh.h);
  return s;
}

SymTridiag gram_operator(const Mesh1D& mesh, Space space) {
  return space == Space::L2 ? mass_matrix(mesh) : stiffness_matrix(mesh);
}

NodalField interpolate(const ScalarField& f, const Mesh1D& mesh) {
  NodalField u;
  u.mesh = mesh;
  u.values.resize(mesh.n_dof());
  for (int j = 0; j < mesh.n_dof(); ++j) {
    const double v = f(mesh.node(j));
    if (!std::isfinite(v)) {
      throw std::invalid_argument("interpolate: non-finite sample at x = " +
                                  std::to_string(mesh.node(j)));
    }
    u.values[j] = v;
  }
  return u;
}

double inner_product(const NodalField& u, const NodalField& v, Space space) {
  if (u.mesh != v.mesh) {
    throw std::invalid_argument("inner_product: mesh mismatch");
  }
  const SymTridiag g = gram_operator(u.mesh, space);
  return u.values.dot(g.apply(v.values));
}

double norm(const NodalField& u, Space space) {
  return std::sqrt(inner_product(u, u, space));
}

Eigen::VectorXd solve_gram(const SymTridiag& g, const Eigen::VectorXd& rhs) {
  const auto n = g.diag.size();
  if (rhs.size() != n) {
    throw std::invalid_argument("solve_gram: size mismatch");
  }
  // LDL^T factorization of the tridiagonal matrix; positive pivots required.
  Eigen::VectorXd d(n), l(n > 0 ? n - 1 : 0);
  d[0] = g.diag[0];
  if (d[0] <= 0.0) throw std::runtime_error("solve_gram: matrix not positive definite");
  for (Eigen::Index i = 1; i < n; ++i) {
    l[i - 1] = g.off[i - 1] / d[i - 1];
    d[i] = g.diag[i] - l[i - 1] * g.off[i - 1];
    if (d[i] <= 0.0) throw std::runtime_error("solve_gram: matrix not positive definite");
  }
  Eigen::VectorXd x = rhs;
  for (Eigen::Index i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  x.array() /= d.array();
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] -= l[i] * x[i + 1];
  return x;
}

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& g, const Eigen::VectorXd& rhs) {
  if (g.rows() != g.cols() || g.rows() != rhs.size()) {
    throw std::invalid_argument("solve_gram: size mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("solve_gram: matrix not positive definite");
  }
  return llt.solve(rhs);
}

}  // namespace podrom
