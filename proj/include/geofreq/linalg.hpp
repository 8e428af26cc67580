#pragma once

#include <Eigen/Dense>

namespace geofreq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Standard symplectic form on R^{2d}: J = [[0, -I], [I, 0]], so that the
// Jacobi generator A = [[0, I], [-R, 0]] satisfies JA = diag(R, I).
Matrix symplectic_form(int d);

// max |(X^T J X - J)_{ij}|
double symplectic_defect(const Matrix& x);

// max |(A^T J + J A)_{ij}|
double lie_algebra_defect(const Matrix& a);

// X^{-1} = -J X^T J for X in Sp(2d).
Matrix symplectic_inverse(const Matrix& x);

// Smallest eigenvalue of the symmetric part (M + M^T)/2.
double min_symmetric_eigenvalue(const Matrix& m);

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace geofreq
