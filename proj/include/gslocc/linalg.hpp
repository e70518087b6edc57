#pragma once

#include <Eigen/Dense>

namespace gslocc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues ascend;
/// column j of `vectors` belongs to `values(j)`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm
/// drops below 1e-13 times the Frobenius norm of the input. Intended for the
/// small (at most a few dozen rows) matrices this library produces.
SymmetricEigen jacobi_eigen(const Matrix& symmetric);

double min_eigenvalue(const Matrix& symmetric);

/// Positive semidefinite test with the library-wide tolerance:
/// min eigenvalue >= -rel_tol * max(1, largest diagonal entry).
bool is_psd(const Matrix& symmetric, double rel_tol = 1e-9);

/// Principal square root of a symmetric positive semidefinite matrix.
Matrix sqrt_psd(const Matrix& symmetric);

bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

}  // namespace gslocc
