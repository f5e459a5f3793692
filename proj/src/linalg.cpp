#include "cyclordf/linalg.hpp"

#include <algorithm>

namespace cyclordf {

SymmetricSpectrum symmetric_eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  // Eigen returns ascending order; flip.
  const Eigen::Index n = m.rows();
  SymmetricSpectrum s{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    s.values(i) = es.eigenvalues()(n - 1 - i);
    s.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return s;
}

Matrix symmetric_sqrt(const SymmetricSpectrum& s) {
  const Vector root = s.values.cwiseMax(0.0).cwiseSqrt();
  return s.vectors * root.asDiagonal() * s.vectors.transpose();
}

bool psd_within(const Matrix& m, double tol) {
  if (m.rows() == 0) return true;
  Matrix shifted = m;
  shifted.diagonal().array() += tol;
  Eigen::LLT<Matrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

double max_diagonal(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  return m.diagonal().maxCoeff();
}

}  // namespace cyclordf
