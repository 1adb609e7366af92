#pragma once

#include <Eigen/Dense>
#include <functional>

namespace podrom {

/// Inner-product space selector: L2 uses the mass matrix as Gram operator,
/// H10 uses the stiffness matrix.
enum class Space { L2, H10 };

/// Uniform mesh on [0,1] with homogeneous Dirichlet boundaries.
/// Only the n_elems-1 interior nodes carry degrees of freedom.
struct Mesh1D {
  int n_elems = 0;
  double h = 0.0;

  int n_dof() const { return n_elems - 1; }
  /// Coordinate of interior node j (0-based), x = (j+1)*h.
  double node(int j) const { return (j + 1) * h; }

  friend bool operator==(const Mesh1D&, const Mesh1D&) = default;
};

Mesh1D build_mesh(int n_elems);

/// Symmetric tridiagonal operator; diag has n_dof entries, off has n_dof-1.
struct SymTridiag {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  int size() const { return static_cast<int>(diag.size()); }

  /// y = A x, column-wise for matrix arguments.
  template <typename Derived>
  typename Derived::PlainObject apply(const Eigen::MatrixBase<Derived>& x) const {
    const auto n = diag.size();
    eigen_assert(x.rows() == n);
    typename Derived::PlainObject y = diag.asDiagonal() * x.derived();
    y.topRows(n - 1) += off.asDiagonal() * x.derived().bottomRows(n - 1);
    y.bottomRows(n - 1) += off.asDiagonal() * x.derived().topRows(n - 1);
    return y;
  }

  Eigen::MatrixXd dense() const;
};

/// Linear-FE mass matrix, closed form: diag 2h/3, off-diagonal h/6.
SymTridiag mass_matrix(const Mesh1D& mesh);

/// Linear-FE stiffness matrix, closed form: diag 2/h, off-diagonal -1/h.
SymTridiag stiffness_matrix(const Mesh1D& mesh);

/// Mass matrix for Space::L2, stiffness matrix for Space::H10.
SymTridiag gram_operator(const Mesh1D& mesh, Space space);

/// Interior nodal values of a field on a mesh.
struct NodalField {
  Eigen::VectorXd values;
  Mesh1D mesh;
};

using ScalarField = std::function<double(double)>;

/// Lagrange interpolant at the interior FE nodes. Throws on non-finite samples.
NodalField interpolate(const ScalarField& f, const Mesh1D& mesh);

double inner_product(const NodalField& u, const NodalField& v, Space space);
double norm(const NodalField& u, Space space);

/// Direct SPD solve G x = rhs. Throws std::runtime_error on pivot failure.
Eigen::VectorXd solve_gram(const SymTridiag& g, const Eigen::VectorXd& rhs);
Eigen::VectorXd solve_gram(const Eigen::MatrixXd& g, const Eigen::VectorXd& rhs);

}  // namespace podrom
