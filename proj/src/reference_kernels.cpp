// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/reference_kernels.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace strbil::reference {

template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  if (A.cols() != B.rows()) throw InvalidSizeError("reference::multiply: inner dimensions differ");
  Matrix<Scalar> C(A.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    Scalar* cj = C.col_data(j);
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Scalar bkj = B(k, j);
      if (bkj == Scalar(0)) continue;
      const Scalar* ak = A.col_data(k);
      for (std::size_t i = 0; i < A.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return C;
}

template <typename Scalar>
Matrix<Scalar> solve_dense(const Matrix<Scalar>& A_in, const Matrix<Scalar>& B,
                           double pivot_tol) {
  if (A_in.rows() != A_in.cols())
    throw InvalidSizeError("reference::solve_dense: square matrix required");
  if (B.rows() != A_in.rows())
    throw InvalidSizeError("reference::solve_dense: row count mismatch");
  Matrix<Scalar> A = A_in;
  Matrix<Scalar> X = B;
  const std::size_t n = A.rows();
  double amax = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) amax = std::max(amax, std::abs(A.data()[i]));
  const double threshold = pivot_tol * amax;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(A(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(A(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best > threshold))
      throw SingularMatrixError("reference::solve_dense: pivot below tolerance at step " +
                                std::to_string(k));
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      for (std::size_t j = 0; j < X.cols(); ++j) std::swap(X(k, j), X(piv, j));
    }
    const Scalar inv_pivot = Scalar(1) / A(k, k);
    for (std::size_t i = k + 1; i < n; ++i) A(i, k) *= inv_pivot;
    for (std::size_t j = k + 1; j < n; ++j) {
      const Scalar akj = A(k, j);
      if (akj == Scalar(0)) continue;
      for (std::size_t i = k + 1; i < n; ++i) A(i, j) -= A(i, k) * akj;
    }
    for (std::size_t j = 0; j < X.cols(); ++j) {
      const Scalar xk = X(k, j);
      if (xk == Scalar(0)) continue;
      for (std::size_t i = k + 1; i < n; ++i) X(i, j) -= A(i, k) * xk;
    }
  }
  for (std::size_t j = 0; j < X.cols(); ++j) {
    for (std::size_t kk = n; kk-- > 0;) {
      X(kk, j) /= A(kk, kk);
      const Scalar xk = X(kk, j);
      if (xk == Scalar(0)) continue;
      for (std::size_t i = 0; i < kk; ++i) X(i, j) -= A(i, kk) * xk;
    }
  }
  return X;
}

template Matrix<double> multiply(const Matrix<double>&, const Matrix<double>&);
template Matrix<Complex> multiply(const Matrix<Complex>&, const Matrix<Complex>&);
template Matrix<double> solve_dense(const Matrix<double>&, const Matrix<double>&, double);
template Matrix<Complex> solve_dense(const Matrix<Complex>&, const Matrix<Complex>&, double);

} // namespace strbil::reference
