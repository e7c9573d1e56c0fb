// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>

namespace strbil {

ComplexMatrix to_complex(const RealMatrix& A) {
  ComplexMatrix out(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(i, j) = Complex(A(i, j), 0.0);
  return out;
}

RealMatrix real_part(const ComplexMatrix& A, bool strict) {
  RealMatrix out(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (strict && A(i, j).imag() != 0.0)
        throw InvalidSizeError("real_part: matrix has nonzero imaginary entries");
      out(i, j) = A(i, j).real();
    }
  return out;
}

RealMatrix imag_part(const ComplexMatrix& A) {
  RealMatrix out(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(i, j) = A(i, j).imag();
  return out;
}

bool is_real(const ComplexMatrix& A) {
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (A(i, j).imag() != 0.0) return false;
  return true;
}

ComplexMatrix conjugate(const ComplexMatrix& A) {
  ComplexMatrix out(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(i, j) = std::conj(A(i, j));
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& A) {
  ComplexMatrix out(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(j, i) = std::conj(A(i, j));
  return out;
}

} // namespace strbil

namespace strbil::linalg {

namespace {
// Work threshold below which a parallel region costs more than it saves.
constexpr std::int64_t kParallelFlopCutoff = 1 << 16;
} // namespace

template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  if (A.cols() != B.rows()) throw InvalidSizeError("multiply: inner dimensions differ");
  Matrix<Scalar> C(A.rows(), B.cols());
  const std::int64_t nj = static_cast<std::int64_t>(B.cols());
  const std::int64_t work =
      static_cast<std::int64_t>(A.rows()) * static_cast<std::int64_t>(A.cols()) * nj;
  // Columns of C are independent, so the parallel result is bitwise identical
  // to the serial one.
#pragma omp parallel for if (work > kParallelFlopCutoff)
  for (std::int64_t j = 0; j < nj; ++j) {
    Scalar* cj = C.col_data(static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Scalar bkj = B(k, static_cast<std::size_t>(j));
      if (bkj == Scalar(0)) continue;
      const Scalar* ak = A.col_data(k);
      for (std::size_t i = 0; i < A.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return C;
}

ComplexMatrix multiply_adjoint_left(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != B.rows()) throw InvalidSizeError("multiply_adjoint_left: row counts differ");
  ComplexMatrix C(A.cols(), B.cols());
  const std::int64_t nj = static_cast<std::int64_t>(B.cols());
  const std::int64_t work =
      static_cast<std::int64_t>(A.rows()) * static_cast<std::int64_t>(A.cols()) * nj;
#pragma omp parallel for if (work > kParallelFlopCutoff)
  for (std::int64_t j = 0; j < nj; ++j) {
    const Complex* bj = B.col_data(static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < A.cols(); ++i) {
      const Complex* ai = A.col_data(i);
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < A.rows(); ++k) acc += std::conj(ai[k]) * bj[k];
      C(i, static_cast<std::size_t>(j)) = acc;
    }
  }
  return C;
}

template <typename Scalar>
LuFactorization<Scalar>::LuFactorization(Matrix<Scalar> A, double pivot_tol)
    : lu_(std::move(A)) {
  if (lu_.rows() != lu_.cols()) throw InvalidSizeError("LuFactorization: square matrix required");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  const double amax = max_abs(lu_);
  const double threshold = pivot_tol * amax;
  for (std::size_t k = 0; k < n; ++k) {
    // Partial pivoting: bring the largest remaining entry of column k up.
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best > threshold))
      throw SingularMatrixError("LuFactorization: pivot below tolerance at step " +
                                std::to_string(k));
    perm_[k] = piv;
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
    const Scalar inv_pivot = Scalar(1) / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu_(i, k) *= inv_pivot;
    const std::int64_t trailing = static_cast<std::int64_t>(n - k) - 1;
    const std::int64_t work = trailing * trailing;
    // Rank-one trailing update; columns are independent.
#pragma omp parallel for if (work > kParallelFlopCutoff)
    for (std::int64_t jj = static_cast<std::int64_t>(k) + 1; jj < static_cast<std::int64_t>(n);
         ++jj) {
      const std::size_t j = static_cast<std::size_t>(jj);
      const Scalar akj = lu_(k, j);
      if (akj == Scalar(0)) continue;
      Scalar* colj = lu_.col_data(j);
      const Scalar* colk = lu_.col_data(k);
      for (std::size_t i = k + 1; i < n; ++i) colj[i] -= colk[i] * akj;
    }
  }
}

template <typename Scalar>
Matrix<Scalar> LuFactorization<Scalar>::solve(const Matrix<Scalar>& B) const {
  const std::size_t n = dim();
  if (B.rows() != n) throw InvalidSizeError("LuFactorization::solve: row count mismatch");
  Matrix<Scalar> X = B;
  // P A = L U, so X = U^{-1} L^{-1} P B.
  for (std::size_t k = 0; k < n; ++k)
    if (perm_[k] != k)
      for (std::size_t j = 0; j < X.cols(); ++j) std::swap(X(k, j), X(perm_[k], j));
  for (std::size_t j = 0; j < X.cols(); ++j) {
    Scalar* xj = X.col_data(j);
    for (std::size_t k = 0; k < n; ++k) { // L has unit diagonal
      const Scalar xk = xj[k];
      if (xk == Scalar(0)) continue;
      const Scalar* colk = lu_.col_data(k);
      for (std::size_t i = k + 1; i < n; ++i) xj[i] -= colk[i] * xk;
    }
    for (std::size_t kk = n; kk-- > 0;) {
      xj[kk] /= lu_(kk, kk);
      const Scalar xk = xj[kk];
      if (xk == Scalar(0)) continue;
      const Scalar* colk = lu_.col_data(kk);
      for (std::size_t i = 0; i < kk; ++i) xj[i] -= colk[i] * xk;
    }
  }
  return X;
}

template <typename Scalar>
Matrix<Scalar> LuFactorization<Scalar>::solve_adjoint(const Matrix<Scalar>& B) const {
  const std::size_t n = dim();
  if (B.rows() != n) throw InvalidSizeError("LuFactorization::solve_adjoint: row count mismatch");
  Matrix<Scalar> X = B;
  const auto conj_of = [](const Scalar& v) {
    if constexpr (std::is_same_v<Scalar, Complex>)
      return std::conj(v);
    else
      return v;
  };
  // A^H = U^H L^H P, so X = P^T L^{-H} U^{-H} B.
  for (std::size_t j = 0; j < X.cols(); ++j) {
    Scalar* xj = X.col_data(j);
    for (std::size_t k = 0; k < n; ++k) { // U^H is lower triangular
      Scalar acc = xj[k];
      for (std::size_t i = 0; i < k; ++i) acc -= conj_of(lu_(i, k)) * xj[i];
      xj[k] = acc / conj_of(lu_(k, k));
    }
    for (std::size_t kk = n; kk-- > 0;) { // L^H is unit upper triangular
      Scalar acc = xj[kk];
      for (std::size_t i = kk + 1; i < n; ++i) acc -= conj_of(lu_(i, kk)) * xj[i];
      xj[kk] = acc;
    }
  }
  for (std::size_t k = n; k-- > 0;)
    if (perm_[k] != k)
      for (std::size_t j = 0; j < X.cols(); ++j) std::swap(X(k, j), X(perm_[k], j));
  return X;
}

template <typename Scalar>
Matrix<Scalar> solve_dense(const Matrix<Scalar>& A, const Matrix<Scalar>& B, double pivot_tol) {
  return LuFactorization<Scalar>(A, pivot_tol).solve(B);
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& M, double tol) {
  const std::size_t n = M.rows();
  const double scale = frobenius_norm(M);
  std::vector<std::vector<Complex>> kept;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    std::vector<Complex> v(M.col_data(j), M.col_data(j) + n);
    // Two projection passes make the basis orthogonal to machine precision
    // even when incoming columns are nearly dependent.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) {
        Complex coeff(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) coeff += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= coeff * q[i];
      }
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm_sq += std::norm(v[i]);
    const double norm = std::sqrt(norm_sq);
    if (norm <= tol * scale) continue; // numerically dependent column: drop it
    const double inv = 1.0 / norm;
    for (auto& x : v) x *= inv;
    kept.push_back(std::move(v));
  }
  if (kept.empty()) throw EmptyBasisError("orthonormalize_columns: no columns survived");
  ComplexMatrix Q(n, kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) Q(i, j) = kept[j][i];
  return Q;
}

template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  Matrix<Scalar> out(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::size_t ja = 0; ja < A.cols(); ++ja)
    for (std::size_t ia = 0; ia < A.rows(); ++ia) {
      const Scalar a = A(ia, ja);
      if (a == Scalar(0)) continue;
      for (std::size_t jb = 0; jb < B.cols(); ++jb)
        for (std::size_t ib = 0; ib < B.rows(); ++ib)
          out(ia * B.rows() + ib, ja * B.cols() + jb) = a * B(ib, jb);
    }
  return out;
}

template <typename Scalar>
double frobenius_norm(const Matrix<Scalar>& A) {
  double acc = 0.0;
  const Scalar* p = A.data();
  for (std::size_t i = 0; i < A.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, Complex>)
      acc += std::norm(p[i]);
    else
      acc += p[i] * p[i];
  }
  return std::sqrt(acc);
}

template <typename Scalar>
double max_abs(const Matrix<Scalar>& A) {
  double best = 0.0;
  const Scalar* p = A.data();
  for (std::size_t i = 0; i < A.size(); ++i) best = std::max(best, std::abs(p[i]));
  return best;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& A_in) {
  if (A_in.rows() != A_in.cols())
    throw InvalidSizeError("hermitian_eigenvalues: square matrix required");
  const std::size_t n = A_in.rows();
  if (n == 0) return {};
  // Symmetrize first so tiny non-Hermitian roundoff in products like A^H A
  // cannot stall the sweeps.
  ComplexMatrix A(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) A(i, j) = 0.5 * (A_in(i, j) + std::conj(A_in(j, i)));
  const double scale = frobenius_norm(A);
  std::vector<double> lambda(n, 0.0);
  if (scale == 0.0) return lambda;

  const auto off_norm = [&]() {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) acc += std::norm(A(i, j));
    return std::sqrt(acc);
  };

  // Cyclic Jacobi sweeps with complex rotations: the phase of a_pq is
  // absorbed into the rotation so each (p, q) pair reduces to the real
  // symmetric case.
  for (int sweep = 0; sweep < 100 && off_norm() > 1e-14 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = A(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const Complex phase = apq / b;
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex spos = s * phase;            // J(p,q)
        const Complex sneg = -s * std::conj(phase); // J(q,p)
        for (std::size_t i = 0; i < n; ++i) {       // A <- A J
          const Complex ap = A(i, p), aq = A(i, q);
          A(i, p) = ap * c + aq * sneg;
          A(i, q) = ap * spos + aq * c;
        }
        for (std::size_t j = 0; j < n; ++j) { // A <- J^H A
          const Complex ap = A(p, j), aq = A(q, j);
          A(p, j) = c * ap + std::conj(sneg) * aq;
          A(q, j) = std::conj(spos) * ap + c * aq;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) lambda[i] = A(i, i).real();
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

double spectral_norm(const ComplexMatrix& A) {
  if (A.size() == 0) return 0.0;
  ComplexMatrix G = (A.cols() <= A.rows()) ? multiply_adjoint_left(A, A)
                                           : multiply_adjoint_left(adjoint(A), adjoint(A));
  const std::vector<double> ev = hermitian_eigenvalues(G);
  const double lmax = ev.empty() ? 0.0 : std::max(0.0, ev.back());
  return std::sqrt(lmax);
}

double relative_spectral_error(const ComplexMatrix& A, const ComplexMatrix& B) {
  const double den = spectral_norm(B);
  const double num = spectral_norm(A - B);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

template Matrix<double> multiply(const Matrix<double>&, const Matrix<double>&);
template Matrix<Complex> multiply(const Matrix<Complex>&, const Matrix<Complex>&);
template class LuFactorization<double>;
template class LuFactorization<Complex>;
template Matrix<double> solve_dense(const Matrix<double>&, const Matrix<double>&, double);
template Matrix<Complex> solve_dense(const Matrix<Complex>&, const Matrix<Complex>&, double);
template Matrix<double> kron(const Matrix<double>&, const Matrix<double>&);
template Matrix<Complex> kron(const Matrix<Complex>&, const Matrix<Complex>&);
template double frobenius_norm(const Matrix<double>&);
template double frobenius_norm(const Matrix<Complex>&);
template double max_abs(const Matrix<double>&);
template double max_abs(const Matrix<Complex>&);

} // namespace strbil::linalg
