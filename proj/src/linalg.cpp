#include "geofreq/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace geofreq {

Matrix symplectic_form(int d) {
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = -Matrix::Identity(d, d);
  j.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
  return j;
}

double symplectic_defect(const Matrix& x) {
  const Matrix j = symplectic_form(static_cast<int>(x.rows() / 2));
  return (x.transpose() * j * x - j).cwiseAbs().maxCoeff();
}

double lie_algebra_defect(const Matrix& a) {
  const Matrix j = symplectic_form(static_cast<int>(a.rows() / 2));
  return (a.transpose() * j + j * a).cwiseAbs().maxCoeff();
}

Matrix symplectic_inverse(const Matrix& x) {
  const Matrix j = symplectic_form(static_cast<int>(x.rows() / 2));
  return -j * x.transpose() * j;
}

double min_symmetric_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace geofreq
