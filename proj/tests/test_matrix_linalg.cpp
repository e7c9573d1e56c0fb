// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include <doctest.h>

#include <cmath>
#include <limits>

#include "strbil/linalg.hpp"
#include "strbil/matrix.hpp"
#include "strbil/reference_kernels.hpp"
#include "support.hpp"

using strbil::Complex;
using strbil::ComplexMatrix;
using strbil::RealMatrix;
using namespace strbil::linalg;

TEST_CASE("matrix construction, indexing, and identity") {
  ComplexMatrix A(2, 3);
  CHECK(A.rows() == 2);
  CHECK(A.cols() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 2; ++i) CHECK(A(i, j) == Complex(0.0, 0.0));

  A(1, 2) = Complex(4.0, -1.0);
  CHECK(A(1, 2) == Complex(4.0, -1.0));

  const ComplexMatrix I = ComplexMatrix::identity(3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) CHECK(I(i, j) == Complex(i == j ? 1.0 : 0.0, 0.0));
}

TEST_CASE("matrix is stored column-major") {
  ComplexMatrix A(2, 2);
  A(0, 0) = 1.0;
  A(1, 0) = 2.0;
  A(0, 1) = 3.0;
  A(1, 1) = 4.0;
  CHECK(A.data()[0] == Complex(1.0));
  CHECK(A.data()[1] == Complex(2.0));
  CHECK(A.data()[2] == Complex(3.0));
  CHECK(A.data()[3] == Complex(4.0));
  CHECK(A.col_data(1)[0] == Complex(3.0));
}

TEST_CASE("block extraction and placement") {
  ComplexMatrix A(3, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) A(i, j) = Complex(double(10 * i + j), 0.0);

  const ComplexMatrix B = A.block(1, 1, 2, 2);
  CHECK(B(0, 0) == Complex(11.0));
  CHECK(B(1, 1) == Complex(22.0));

  ComplexMatrix C(3, 3);
  C.set_block(1, 1, B);
  CHECK(C(0, 0) == Complex(0.0));
  CHECK(C(2, 2) == Complex(22.0));

  CHECK_THROWS_AS(A.block(2, 2, 2, 2), strbil::InvalidSizeError);
  CHECK_THROWS_AS(C.set_block(2, 2, B), strbil::InvalidSizeError);
}

TEST_CASE("arithmetic operators and shape checks") {
  testsupport::Rng rng(11);
  const ComplexMatrix A = testsupport::random_complex_matrix(3, 2, rng);
  const ComplexMatrix B = testsupport::random_complex_matrix(3, 2, rng);

  const ComplexMatrix S = A + B;
  const ComplexMatrix D = A - B;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(S(i, j) == A(i, j) + B(i, j));
      CHECK(D(i, j) == A(i, j) - B(i, j));
    }

  const ComplexMatrix T = Complex(2.0, 1.0) * A;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) CHECK(T(i, j) == Complex(2.0, 1.0) * A(i, j));

  const ComplexMatrix W = testsupport::random_complex_matrix(2, 2, rng);
  ComplexMatrix bad = A;
  CHECK_THROWS_AS(bad += W, strbil::InvalidSizeError);
}

TEST_CASE("hcat joins blocks and tolerates empty operands") {
  ComplexMatrix A(2, 1);
  A(0, 0) = 1.0;
  A(1, 0) = 2.0;
  ComplexMatrix B(2, 2);
  B(0, 0) = 3.0;
  B(1, 1) = 4.0;

  const ComplexMatrix AB = strbil::hcat(A, B);
  CHECK(AB.rows() == 2);
  CHECK(AB.cols() == 3);
  CHECK(AB(0, 0) == Complex(1.0));
  CHECK(AB(0, 1) == Complex(3.0));
  CHECK(AB(1, 2) == Complex(4.0));

  const ComplexMatrix empty;
  CHECK(strbil::hcat(empty, A).cols() == 1);
  CHECK(strbil::hcat(A, empty).cols() == 1);

  ComplexMatrix tall(3, 1);
  CHECK_THROWS_AS(strbil::hcat(A, tall), strbil::InvalidSizeError);
}

TEST_CASE("real/complex conversions, conjugation, adjoint") {
  RealMatrix R(2, 2);
  R(0, 0) = 1.0;
  R(1, 0) = -2.0;
  R(0, 1) = 3.0;
  R(1, 1) = 4.0;
  const ComplexMatrix C = strbil::to_complex(R);
  CHECK(strbil::is_real(C));
  CHECK(C(1, 0) == Complex(-2.0, 0.0));

  const RealMatrix back = strbil::real_part(C, /*strict=*/true);
  CHECK(testsupport::max_abs_diff(back, R) == 0.0);

  ComplexMatrix Z(1, 2);
  Z(0, 0) = Complex(1.0, 2.0);
  Z(0, 1) = Complex(-3.0, -4.0);
  CHECK_FALSE(strbil::is_real(Z));
  CHECK_THROWS_AS(strbil::real_part(Z, true), strbil::InvalidSizeError);
  CHECK(strbil::imag_part(Z)(0, 1) == -4.0);
  CHECK(strbil::conjugate(Z)(0, 0) == Complex(1.0, -2.0));

  const ComplexMatrix ZH = strbil::adjoint(Z);
  CHECK(ZH.rows() == 2);
  CHECK(ZH.cols() == 1);
  CHECK(ZH(0, 0) == Complex(1.0, -2.0));
  CHECK(ZH(1, 0) == Complex(-3.0, 4.0));

  // A negative-zero imaginary part still counts as real storage.
  ComplexMatrix NZ(1, 1);
  NZ(0, 0) = Complex(2.0, -0.0);
  CHECK(strbil::is_real(NZ));
}

TEST_CASE("multiply matches a hand-computed 2x2 product") {
  ComplexMatrix A(2, 2), B(2, 2);
  A(0, 0) = Complex(1.0, 1.0);
  A(0, 1) = Complex(2.0, 0.0);
  A(1, 0) = Complex(0.0, -1.0);
  A(1, 1) = Complex(3.0, 0.0);
  B(0, 0) = Complex(1.0, 0.0);
  B(0, 1) = Complex(0.0, 2.0);
  B(1, 0) = Complex(-1.0, 0.0);
  B(1, 1) = Complex(1.0, 1.0);

  const ComplexMatrix P = multiply(A, B);
  CHECK(P(0, 0) == Complex(-1.0, 1.0));              // (1+i) - 2
  CHECK(P(0, 1) == Complex(-2.0 + 2.0, 2.0 + 2.0));  // (1+i)(2i) + 2(1+i)
  CHECK(P(1, 0) == Complex(-3.0, -1.0));             // -i - 3
  CHECK(P(1, 1) == Complex(2.0 + 3.0, 0.0 + 3.0));   // (-i)(2i) + 3(1+i)

  ComplexMatrix wrong(3, 2);
  CHECK_THROWS_AS(multiply(A, wrong), strbil::InvalidSizeError);
}

TEST_CASE("multiply_adjoint_left equals adjoint-then-multiply") {
  testsupport::Rng rng(21);
  const ComplexMatrix A = testsupport::random_complex_matrix(4, 3, rng);
  const ComplexMatrix B = testsupport::random_complex_matrix(4, 2, rng);
  const ComplexMatrix direct = multiply_adjoint_left(A, B);
  const ComplexMatrix expected = multiply(strbil::adjoint(A), B);
  CHECK(testsupport::max_abs_diff(direct, expected) == 0.0);
}

TEST_CASE("LU solve reproduces a hand-solved triangular system") {
  // [1 1; 0 2] x = [3; 4]  =>  x = [1; 2]
  ComplexMatrix A(2, 2);
  A(0, 0) = 1.0;
  A(0, 1) = 1.0;
  A(1, 1) = 2.0;
  ComplexMatrix b(2, 1);
  b(0, 0) = 3.0;
  b(1, 0) = 4.0;

  const ComplexMatrix x = solve_dense(A, b);
  CHECK(std::abs(x(0, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(x(1, 0) - Complex(2.0)) < 1e-14);
}

TEST_CASE("LU solve agrees with residual check on random systems") {
  testsupport::Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix A = testsupport::random_complex_matrix(8, 8, rng);
    for (std::size_t i = 0; i < 8; ++i) A(i, i) += Complex(8.0, 0.0);
    const ComplexMatrix B = testsupport::random_complex_matrix(8, 3, rng);
    const ComplexMatrix X = solve_dense(A, B);
    const ComplexMatrix R = multiply(A, X) - B;
    CHECK(max_abs(R) < 1e-12);
  }
}

TEST_CASE("solve_adjoint solves against the conjugate transpose") {
  testsupport::Rng rng(41);
  ComplexMatrix A = testsupport::random_complex_matrix(6, 6, rng);
  for (std::size_t i = 0; i < 6; ++i) A(i, i) += Complex(6.0, 0.0);
  const ComplexMatrix B = testsupport::random_complex_matrix(6, 2, rng);

  const LuFactorization<Complex> lu(A);
  CHECK(lu.dim() == 6);
  const ComplexMatrix X = lu.solve_adjoint(B);
  const ComplexMatrix R = multiply(strbil::adjoint(A), X) - B;
  CHECK(max_abs(R) < 1e-12);
}

TEST_CASE("singular matrices are rejected by the pivot gate") {
  ComplexMatrix Z(3, 3); // all zero
  ComplexMatrix b(3, 1);
  b(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_dense(Z, b), strbil::SingularMatrixError);

  // Rank-1 matrix: second pivot vanishes relative to max|A|.
  ComplexMatrix R1(2, 2);
  R1(0, 0) = 1.0;
  R1(0, 1) = 2.0;
  R1(1, 0) = 2.0;
  R1(1, 1) = 4.0;
  ComplexMatrix b2(2, 1);
  b2(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_dense(R1, b2), strbil::SingularMatrixError);

  try {
    solve_dense(Z, b);
    CHECK(false);
  } catch (const strbil::SingularMatrixError& e) {
    CHECK(e.code() == "singular_matrix");
    CHECK(e.kind() == strbil::ErrorKind::Numerical);
  }
}

TEST_CASE("orthonormalize_columns normalizes a single column") {
  ComplexMatrix v(2, 1);
  v(0, 0) = 3.0;
  v(1, 0) = 4.0;
  const ComplexMatrix Q = orthonormalize_columns(v);
  CHECK(Q.cols() == 1);
  CHECK(std::abs(std::abs(Q(0, 0)) - 0.6) < 1e-15);
  CHECK(std::abs(std::abs(Q(1, 0)) - 0.8) < 1e-15);
}

TEST_CASE("orthonormalize_columns drops dependent columns deterministically") {
  ComplexMatrix M(2, 3);
  M(0, 0) = 1.0;
  M(1, 0) = 0.0;
  M(0, 1) = 2.0; // parallel to column 0: dropped
  M(1, 1) = 0.0;
  M(0, 2) = 1.0;
  M(1, 2) = 1.0;
  const ComplexMatrix Q = orthonormalize_columns(M);
  CHECK(Q.cols() == 2);
  // Survivors keep their original order: e1 direction first.
  CHECK(std::abs(Q(0, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(Q(1, 1)) > 0.9);
}

TEST_CASE("orthonormalize_columns yields orthonormal columns spanning the input") {
  testsupport::Rng rng(51);
  const ComplexMatrix M = testsupport::random_complex_matrix(10, 4, rng);
  const ComplexMatrix Q = orthonormalize_columns(M);
  CHECK(Q.cols() == 4);

  const ComplexMatrix G = multiply_adjoint_left(Q, Q);
  CHECK(testsupport::max_abs_diff(G, ComplexMatrix::identity(4)) < 1e-13);

  // Span preserved: M = Q (Q^H M) up to roundoff.
  const ComplexMatrix recon = multiply(Q, multiply_adjoint_left(Q, M));
  CHECK(testsupport::max_abs_diff(recon, M) < 1e-12);

  ComplexMatrix zeros(5, 2);
  CHECK_THROWS_AS(orthonormalize_columns(zeros), strbil::EmptyBasisError);
}

TEST_CASE("kron matches the definition on a 2x2 pair") {
  ComplexMatrix A(2, 2), B(2, 2);
  A(0, 0) = 1.0;
  A(0, 1) = 2.0;
  A(1, 0) = 3.0;
  A(1, 1) = 4.0;
  B(0, 0) = 0.0;
  B(0, 1) = 5.0;
  B(1, 0) = 6.0;
  B(1, 1) = 7.0;
  const ComplexMatrix K = kron(A, B);
  CHECK(K.rows() == 4);
  CHECK(K.cols() == 4);
  CHECK(K(0, 1) == Complex(5.0));   // a11 * b12
  CHECK(K(1, 0) == Complex(6.0));   // a11 * b21
  CHECK(K(0, 3) == Complex(10.0));  // a12 * b12
  CHECK(K(3, 1) == Complex(21.0));  // a21 * b22
  // Every entry against the definition.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(K(i, j) == A(i / 2, j / 2) * B(i % 2, j % 2));
}

TEST_CASE("frobenius_norm and max_abs") {
  ComplexMatrix A(2, 2);
  A(0, 0) = Complex(3.0, 4.0); // |.| = 5
  A(1, 1) = Complex(0.0, 2.0);
  CHECK(frobenius_norm(A) == doctest::Approx(std::sqrt(29.0)).epsilon(1e-15));
  CHECK(max_abs(A) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("hermitian_eigenvalues on known matrices") {
  // diag(3, -1, 2) -> {-1, 2, 3} ascending
  ComplexMatrix D(3, 3);
  D(0, 0) = 3.0;
  D(1, 1) = -1.0;
  D(2, 2) = 2.0;
  const auto ev = hermitian_eigenvalues(D);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-12));

  // [[2, 1], [1, 2]] -> {1, 3}
  ComplexMatrix S(2, 2);
  S(0, 0) = 2.0;
  S(0, 1) = 1.0;
  S(1, 0) = 1.0;
  S(1, 1) = 2.0;
  const auto evs = hermitian_eigenvalues(S);
  CHECK(evs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evs[1] == doctest::Approx(3.0).epsilon(1e-12));

  // Complex Hermitian [[2, i], [-i, 2]] -> {1, 3}
  ComplexMatrix H(2, 2);
  H(0, 0) = 2.0;
  H(0, 1) = Complex(0.0, 1.0);
  H(1, 0) = Complex(0.0, -1.0);
  H(1, 1) = 2.0;
  const auto evh = hermitian_eigenvalues(H);
  CHECK(evh[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evh[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spectral_norm on known matrices") {
  ComplexMatrix D(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -4.0;
  CHECK(spectral_norm(D) == doctest::Approx(4.0).epsilon(1e-12));

  // Rank-1 u v^H has spectral norm ||u|| ||v||.
  ComplexMatrix u(3, 1), v(2, 1);
  u(0, 0) = 1.0;
  u(1, 0) = 2.0;
  u(2, 0) = 2.0; // ||u|| = 3
  v(0, 0) = Complex(0.0, 3.0);
  v(1, 0) = 4.0; // ||v|| = 5
  const ComplexMatrix R1 = multiply(u, strbil::adjoint(v));
  CHECK(spectral_norm(R1) == doctest::Approx(15.0).epsilon(1e-12));

  // Wide matrix exercises the smaller-side branch.
  testsupport::Rng rng(61);
  const ComplexMatrix W = testsupport::random_complex_matrix(2, 7, rng);
  const ComplexMatrix WT = strbil::adjoint(W);
  CHECK(spectral_norm(W) == doctest::Approx(spectral_norm(WT)).epsilon(1e-12));
}

TEST_CASE("relative_spectral_error conventions") {
  ComplexMatrix Z(2, 2);
  CHECK(relative_spectral_error(Z, Z) == 0.0);

  ComplexMatrix A(2, 2);
  A(0, 0) = 1.0;
  CHECK(relative_spectral_error(A, Z) == std::numeric_limits<double>::infinity());
  CHECK(relative_spectral_error(A, A) == doctest::Approx(0.0));

  ComplexMatrix B = A;
  B(0, 0) = 1.1;
  CHECK(relative_spectral_error(B, A) == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("parallel kernels agree bitwise with the serial reference") {
  testsupport::Rng rng(71);
  const ComplexMatrix A = testsupport::random_complex_matrix(17, 13, rng);
  const ComplexMatrix B = testsupport::random_complex_matrix(13, 9, rng);
  CHECK(testsupport::max_abs_diff(multiply(A, B), strbil::reference::multiply(A, B)) == 0.0);

  ComplexMatrix S = testsupport::random_complex_matrix(12, 12, rng);
  for (std::size_t i = 0; i < 12; ++i) S(i, i) += Complex(12.0, 0.0);
  const ComplexMatrix R = testsupport::random_complex_matrix(12, 5, rng);
  CHECK(testsupport::max_abs_diff(solve_dense(S, R), strbil::reference::solve_dense(S, R)) == 0.0);
}
