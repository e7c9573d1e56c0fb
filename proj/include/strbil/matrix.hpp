// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "strbil/errors.hpp"

namespace strbil {

using Complex = std::complex<double>;

/// Dense column-major matrix. The whole reduction stack works in
/// complex<double> (ComplexMatrix); the time integrator instantiates the
/// real specialization for speed on real-stored systems.
template <typename Scalar>
class Matrix {
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = Scalar(1);
    return I;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  Scalar* data() noexcept { return data_.data(); }
  const Scalar* data() const noexcept { return data_.data(); }
  Scalar* col_data(std::size_t j) noexcept { return data_.data() + j * rows_; }
  const Scalar* col_data(std::size_t j) const noexcept { return data_.data() + j * rows_; }

  /// Copy `B` into the block starting at (r0, c0); must fit.
  void set_block(std::size_t r0, std::size_t c0, const Matrix& B) {
    check(r0 + B.rows_ <= rows_ && c0 + B.cols_ <= cols_, "set_block out of range");
    for (std::size_t j = 0; j < B.cols_; ++j)
      for (std::size_t i = 0; i < B.rows_; ++i) (*this)(r0 + i, c0 + j) = B(i, j);
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    check(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
    Matrix out(nr, nc);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t i = 0; i < nr; ++i) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    check_same_shape(other, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }

  Matrix& operator*=(Scalar a) {
    for (auto& x : data_) x *= a;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Scalar a, Matrix m) { return m *= a; }
  friend Matrix operator*(Matrix m, Scalar a) { return m *= a; }

private:
  static void check(bool ok, const char* what) {
    if (!ok) throw InvalidSizeError(what);
  }
  void check_same_shape(const Matrix& other, const char* op) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw InvalidSizeError(std::string("shape mismatch in Matrix operator") + op);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

/// Promote a real matrix to complex storage (imaginary parts exactly zero).
ComplexMatrix to_complex(const RealMatrix& A);

/// Extract the real part; `strict` throws InvalidSizeError when any entry has
/// a nonzero imaginary part (used before real-arithmetic time integration).
RealMatrix real_part(const ComplexMatrix& A, bool strict = false);

/// Entrywise imaginary part.
RealMatrix imag_part(const ComplexMatrix& A);

/// True when every entry has a (bit-)zero imaginary part (-0.0 counts as 0).
bool is_real(const ComplexMatrix& A);

/// Entrywise complex conjugate.
ComplexMatrix conjugate(const ComplexMatrix& A);

/// Transpose / conjugate transpose.
template <typename Scalar>
Matrix<Scalar> transpose(const Matrix<Scalar>& A) {
  Matrix<Scalar> out(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(j, i) = A(i, j);
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& A);

/// Horizontal concatenation [A B]; row counts must agree.
template <typename Scalar>
Matrix<Scalar> hcat(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  if (A.empty()) return B;
  if (B.empty()) return A;
  if (A.rows() != B.rows()) throw InvalidSizeError("hcat: row count mismatch");
  Matrix<Scalar> out(A.rows(), A.cols() + B.cols());
  out.set_block(0, 0, A);
  out.set_block(0, A.cols(), B);
  return out;
}

} // namespace strbil
