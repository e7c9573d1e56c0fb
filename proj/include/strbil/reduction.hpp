// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strbil/interpolation.hpp"
#include "strbil/structured_system.hpp"

namespace strbil {

/// A reduced system together with the bases that produced it and the
/// interpolation data it realizes (provenance for serialization and
/// verification).
struct ReducedModel {
  StructuredBilinearSystem system;
  ComplexMatrix V, W; // n x r, full column rank
  InterpolationSpec spec;
  std::vector<std::string> warnings; // e.g. reduced pencil singular at a probe point
};

/// Project every constant matrix of the template: K_hat(s) = W^H K(s) V and
/// likewise for the other quadruple members, so the reduced system keeps the
/// parent's template (delay tau copied bit-identically; Generic wraps the
/// evaluators in the W^H (.) V composition). V and W must have the same
/// column count r <= n and full column rank (RankDeficientBasisError).
StructuredBilinearSystem petrov_galerkin_project(const StructuredBilinearSystem& sys,
                                                 const ComplexMatrix& V, const ComplexMatrix& W);

/// Check the reduced pencil K_hat(s) for invertibility at each probe point.
/// Returns one human-readable warning per singular point (the interpolation
/// theorems assume regularity; violations are surfaced, never repaired).
std::vector<std::string> probe_reduced_pencil(const StructuredBilinearSystem& reduced,
                                              const std::vector<Complex>& probe_points);

/// Deterministic pseudo-random matrix with orthonormal columns, used to
/// complete the unconstrained side of a one-sided reduction. The same
/// (n, r, real_entries, seed) always yields the same matrix.
ComplexMatrix random_orthonormal(std::size_t n, std::size_t r, bool real_entries,
                                 std::uint64_t seed);

/// Full reduction pipeline: build the basis blocks required by spec.side,
/// assemble (optionally realified) orthonormal bases, complete the free side
/// (VOnly/WOnly draw a deterministic random orthonormal mate, OneSidedWEqualsV
/// sets W := V; two-sided bases of unequal rank are padded to a common column
/// count), project, and probe the reduced pencil at every spec point plus one
/// fixed probe point. Realification additionally requires a real system.
ReducedModel reduce(const StructuredBilinearSystem& sys, const InterpolationSpec& spec);

} // namespace strbil
