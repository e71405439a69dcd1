#include "cobi/spd_matrix.hpp"

#include <cmath>

#include <Eigen/QR>

namespace cobi {

SpdMatrix::SpdMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("SpdMatrix: matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < entries_.cols(); ++j) {
      const double tol = 1e-12 * std::max(1.0, std::abs(entries_(i, j)));
      if (std::abs(entries_(i, j) - entries_(j, i)) > tol) {
        throw ValidationError("SpdMatrix: matrix is not symmetric at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
    }
  }
  // Symmetrize exactly so downstream arithmetic sees a symmetric matrix.
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
  llt_.compute(entries_);
  if (llt_.info() != Eigen::Success) {
    throw ValidationError("SpdMatrix: Cholesky failed, matrix is not positive definite");
  }
}

SpdMatrix SpdMatrix::identity(Eigen::Index n) {
  return SpdMatrix(Matrix::Identity(n, n));
}

SpdMatrix SpdMatrix::from_spectrum(const Vector& eigenvalues,
                                   const Matrix& rotation) {
  const Eigen::Index n = eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(eigenvalues[i] > 0.0)) {
      throw ValidationError("from_spectrum: invalid spectrum, eigenvalue " +
                            std::to_string(i) + " is not positive");
    }
  }
  if (rotation.rows() != n || rotation.cols() != n) {
    throw ValidationError("from_spectrum: rotation has wrong shape");
  }
  const Matrix defect =
      rotation.transpose() * rotation - Matrix::Identity(n, n);
  if (defect.cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("from_spectrum: invalid rotation, not orthogonal to 1e-10");
  }
  Matrix a = rotation * eigenvalues.asDiagonal() * rotation.transpose();
  a = 0.5 * (a + a.transpose()).eval();
  return SpdMatrix(std::move(a));
}

double SpdMatrix::norm(const Vector& x) const {
  return std::sqrt(quad(x));
}

double SpdMatrix::inner(const Vector& x, const Vector& y) const {
  check_dimension(x.size(), dimension(), "SpdMatrix::inner");
  check_dimension(y.size(), dimension(), "SpdMatrix::inner");
  return x.dot(entries_ * y);
}

double SpdMatrix::quad(const Vector& x) const {
  check_dimension(x.size(), dimension(), "SpdMatrix::quad");
  const double q = x.dot(entries_ * x);
  return q > 0.0 ? q : 0.0;  // clamp -0.0 / rounding at the origin
}

Vector SpdMatrix::solve(const Vector& rhs) const {
  check_dimension(rhs.size(), dimension(), "SpdMatrix::solve");
  Vector y = llt_.solve(rhs);
  // One step of iterative refinement keeps the residual at the contract
  // level (1e-10 relative) even for ill-conditioned spectra.
  y += llt_.solve(rhs - entries_ * y);
  return y;
}

Matrix random_rotation(Eigen::Index n, Rng& rng) {
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace cobi
