// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <vector>

#include "strbil/matrix.hpp"
#include "strbil/structured_system.hpp"

namespace testsupport {

/// Deterministic splitmix64-based generator so every test run sees the same
/// matrices regardless of platform or standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform in [-1, 1].
  double uniform();

  /// Uniform complex with real and imaginary parts in [-1, 1].
  strbil::Complex complex_unit();

private:
  std::uint64_t state_;
};

strbil::RealMatrix random_real_matrix(std::size_t rows, std::size_t cols, Rng& rng);
strbil::ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Complex-stored matrix with random real entries (imaginary parts exactly 0).
strbil::ComplexMatrix random_real_entries(std::size_t rows, std::size_t cols, Rng& rng);

/// Random real-coefficient systems whose pencil is comfortably invertible at
/// the points produced by random_points (identity-dominated leading matrix,
/// shifted A). One generator per template; same seed, same system.
strbil::StructuredBilinearSystem random_first_order(std::size_t n, std::size_t m, std::size_t p,
                                                    std::uint64_t seed);
strbil::StructuredBilinearSystem random_second_order(std::size_t n, std::size_t m, std::size_t p,
                                                     std::uint64_t seed);
strbil::StructuredBilinearSystem random_time_delay(std::size_t n, std::size_t m, std::size_t p,
                                                   std::uint64_t seed);

/// Wrap a closed-form system's evaluators into a Generic-template system that
/// declares derivatives up to max_order.
strbil::StructuredBilinearSystem wrap_generic(strbil::StructuredBilinearSystem sys, int max_order);

/// k generic complex points with real part in [0.5, 1.5] and imaginary part
/// in [-1.5, 1.5]: away from the spectra of the generators above.
std::vector<strbil::Complex> random_points(std::size_t k, std::uint64_t seed);

/// Relative deviation |a - b| / |b| for scalar checks (0/0 = 0).
double rel_err(strbil::Complex a, strbil::Complex b);

/// Largest entrywise deviation between two equally sized matrices.
double max_abs_diff(const strbil::ComplexMatrix& A, const strbil::ComplexMatrix& B);
double max_abs_diff(const strbil::RealMatrix& A, const strbil::RealMatrix& B);

} // namespace testsupport
