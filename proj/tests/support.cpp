// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace testsupport {

using strbil::Complex;
using strbil::ComplexMatrix;
using strbil::RealMatrix;
using strbil::StructuredBilinearSystem;

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53; // [0, 1)
  return 2.0 * u - 1.0;
}

Complex Rng::complex_unit() {
  const double re = uniform();
  const double im = uniform();
  return {re, im};
}

RealMatrix random_real_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = rng.uniform();
  return out;
}

ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = rng.complex_unit();
  return out;
}

ComplexMatrix random_real_entries(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = Complex(rng.uniform(), 0.0);
  return out;
}

namespace {

// Leading matrix I + 0.1 R stays invertible; A = R - 2 I pushes the pencil's
// singular points into the left half-plane, clear of random_points.
ComplexMatrix dominated_identity(std::size_t n, Rng& rng) {
  ComplexMatrix M = random_real_entries(n, n, rng);
  M *= Complex(0.1, 0.0);
  return ComplexMatrix::identity(n) + M;
}

ComplexMatrix shifted_random(std::size_t n, Rng& rng) {
  ComplexMatrix A = random_real_entries(n, n, rng);
  ComplexMatrix shift = ComplexMatrix::identity(n);
  shift *= Complex(-2.0, 0.0);
  return A + shift;
}

std::vector<ComplexMatrix> small_bilinear(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<ComplexMatrix> N;
  N.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix Nj = random_real_entries(n, n, rng);
    Nj *= Complex(0.3, 0.0);
    N.push_back(std::move(Nj));
  }
  return N;
}

} // namespace

StructuredBilinearSystem random_first_order(std::size_t n, std::size_t m, std::size_t p,
                                            std::uint64_t seed) {
  Rng rng(seed);
  strbil::FirstOrderForm f;
  f.E = dominated_identity(n, rng);
  f.A = shifted_random(n, rng);
  f.N = small_bilinear(n, m, rng);
  f.B = random_real_entries(n, m, rng);
  f.C = random_real_entries(p, n, rng);
  return StructuredBilinearSystem(std::move(f));
}

StructuredBilinearSystem random_second_order(std::size_t n, std::size_t m, std::size_t p,
                                             std::uint64_t seed) {
  Rng rng(seed);
  strbil::SecondOrderForm f;
  f.M = dominated_identity(n, rng);
  ComplexMatrix D = random_real_entries(n, n, rng);
  D *= Complex(0.5, 0.0);
  f.D = std::move(D);
  f.K = dominated_identity(n, rng);
  f.Np = small_bilinear(n, m, rng);
  f.Nv = small_bilinear(n, m, rng);
  f.Bu = random_real_entries(n, m, rng);
  f.Cp = random_real_entries(p, n, rng);
  f.Cv = random_real_entries(p, n, rng);
  return StructuredBilinearSystem(std::move(f));
}

StructuredBilinearSystem random_time_delay(std::size_t n, std::size_t m, std::size_t p,
                                           std::uint64_t seed) {
  Rng rng(seed);
  strbil::TimeDelayForm f;
  f.E = dominated_identity(n, rng);
  f.A = shifted_random(n, rng);
  ComplexMatrix Ad = random_real_entries(n, n, rng);
  Ad *= Complex(0.3, 0.0);
  f.Ad = std::move(Ad);
  f.tau = 0.7;
  f.N = small_bilinear(n, m, rng);
  f.B = random_real_entries(n, m, rng);
  f.C = random_real_entries(p, n, rng);
  return StructuredBilinearSystem(std::move(f));
}

StructuredBilinearSystem wrap_generic(StructuredBilinearSystem sys, int max_order) {
  strbil::GenericForm g;
  g.n = sys.state_dim();
  g.m = sys.num_inputs();
  g.p = sys.num_outputs();
  g.max_derivative_order = max_order;
  g.real_coefficients = sys.is_real();
  g.output_c = [sys](Complex s, int d) { return sys.output_map(s, d); };
  g.stiff_k = [sys](Complex s, int d) { return sys.system_pencil(s, d); };
  g.bilin_n = [sys](std::size_t j, Complex s, int d) { return sys.bilinear_map(j, s, d); };
  g.input_b = [sys](Complex s, int d) { return sys.input_map(s, d); };
  return StructuredBilinearSystem(std::move(g));
}

std::vector<Complex> random_points(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> pts;
  pts.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double re = 1.0 + 0.5 * rng.uniform();
    const double im = 1.5 * rng.uniform();
    pts.emplace_back(re, im);
  }
  return pts;
}

double rel_err(Complex a, Complex b) {
  const double num = std::abs(a - b);
  const double den = std::abs(b);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

double max_abs_diff(const ComplexMatrix& A, const ComplexMatrix& B) {
  double worst = 0.0;
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) worst = std::max(worst, std::abs(A(i, j) - B(i, j)));
  return worst;
}

double max_abs_diff(const RealMatrix& A, const RealMatrix& B) {
  double worst = 0.0;
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) worst = std::max(worst, std::abs(A(i, j) - B(i, j)));
  return worst;
}

} // namespace testsupport
