#ifndef COBI_SPD_MATRIX_HPP
#define COBI_SPD_MATRIX_HPP

#include <Eigen/Cholesky>

#include "cobi/rng.hpp"
#include "cobi/types.hpp"

namespace cobi {

/// Symmetric positive definite matrix with a cached Cholesky factorization.
/// Immutable after construction.
class SpdMatrix {
 public:
  /// Validates symmetry (|A_ij - A_ji| <= 1e-12 * max(1, |A_ij|)) and
  /// positive definiteness (Cholesky succeeds).  Throws ValidationError.
  explicit SpdMatrix(Matrix entries);

  /// Identity of the given dimension.
  static SpdMatrix identity(Eigen::Index n);

  /// Builds R * diag(eigenvalues) * R^T, symmetrized.
  /// Requires all eigenvalues > 0 and R orthogonal to 1e-10 in the max norm.
  static SpdMatrix from_spectrum(const Vector& eigenvalues,
                                 const Matrix& rotation);

  Eigen::Index dimension() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

  /// sqrt(x^T A x).
  double norm(const Vector& x) const;

  /// x^T A y.
  double inner(const Vector& x, const Vector& y) const;

  /// Quadratic form x^T A x.
  double quad(const Vector& x) const;

  /// Solves A y = rhs via the cached factorization.
  Vector solve(const Vector& rhs) const;

  /// Lower-triangular Cholesky factor L with A = L L^T.
  Matrix cholesky_factor() const { return llt_.matrixL(); }

  Vector operator*(const Vector& x) const { return entries_ * x; }

 private:
  Matrix entries_;
  Eigen::LLT<Matrix> llt_;
};

/// Haar-distributed random orthogonal matrix: QR of a standard normal matrix
/// with sign correction so the diagonal of R is positive.
Matrix random_rotation(Eigen::Index n, Rng& rng);

}  // namespace cobi

#endif  // COBI_SPD_MATRIX_HPP
