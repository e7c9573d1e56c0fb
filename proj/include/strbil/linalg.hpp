// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "strbil/matrix.hpp"

namespace strbil::linalg {

/// Dense product A*B. Parallelized over columns of B when OpenMP is enabled;
/// the result is identical to the serial reference (per-column work is
/// independent, so the summation order never changes).
template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& A, const Matrix<Scalar>& B);

/// A^H * B without forming the adjoint explicitly.
ComplexMatrix multiply_adjoint_left(const ComplexMatrix& A, const ComplexMatrix& B);

/// LU factorization with partial pivoting (PA = LU), kept so that many
/// right-hand sides can be solved against one factorization. Throws
/// SingularMatrixError from the constructor when a pivot falls below
/// pivot_tol * max|A_ij|.
template <typename Scalar>
class LuFactorization {
public:
  explicit LuFactorization(Matrix<Scalar> A, double pivot_tol = 1e-10);

  std::size_t dim() const noexcept { return lu_.rows(); }

  /// Solve A X = B.
  Matrix<Scalar> solve(const Matrix<Scalar>& B) const;

  /// Solve A^H X = B using the same factors (conjugate-transposed sweeps).
  Matrix<Scalar> solve_adjoint(const Matrix<Scalar>& B) const;

private:
  Matrix<Scalar> lu_;               // packed L (unit lower) and U
  std::vector<std::size_t> perm_;   // row swap at step k: rows k <-> perm_[k]
};

/// One-shot solve A X = B.
template <typename Scalar>
Matrix<Scalar> solve_dense(const Matrix<Scalar>& A, const Matrix<Scalar>& B,
                           double pivot_tol = 1e-10);

/// Orthonormalize the columns of M by modified Gram-Schmidt with a second
/// reorthogonalization pass. Columns whose residual norm after projection
/// falls below tol * ||M||_F are dropped; survivors keep their original
/// order, so the result is deterministic. Throws EmptyBasisError when every
/// column is dropped.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& M, double tol = 1e-10);

/// Kronecker product A (x) B.
template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& A, const Matrix<Scalar>& B);

/// Frobenius norm.
template <typename Scalar>
double frobenius_norm(const Matrix<Scalar>& A);

/// Largest entry magnitude.
template <typename Scalar>
double max_abs(const Matrix<Scalar>& A);

/// Eigenvalues of a Hermitian matrix by the cyclic Jacobi method, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& A);

/// Largest singular value, computed as sqrt(lambda_max) of A^H A or A A^H
/// (whichever side is smaller).
double spectral_norm(const ComplexMatrix& A);

/// Convenience: ||A - B||_2 / ||B||_2, with the convention 0/0 = 0. A zero
/// denominator with a nonzero numerator returns +inf.
double relative_spectral_error(const ComplexMatrix& A, const ComplexMatrix& B);

} // namespace strbil::linalg
