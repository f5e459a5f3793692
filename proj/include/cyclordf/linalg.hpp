#pragma once

#include <Eigen/Dense>

namespace cyclordf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigen-pairs of a symmetric matrix, eigenvalues sorted in descending order
/// with eigenvectors as matching columns.
struct SymmetricSpectrum {
  Vector values;
  Matrix vectors;
};

SymmetricSpectrum symmetric_eigen(const Matrix& m);

/// Unique symmetric PSD square root; eigenvalues below zero are clipped.
Matrix symmetric_sqrt(const SymmetricSpectrum& s);

/// True when min eigenvalue >= -tol, checked with a shifted Cholesky
/// (an O(n^3/3) test, no eigen-solve).
bool psd_within(const Matrix& m, double tol);

double max_diagonal(const Matrix& m);

}  // namespace cyclordf
