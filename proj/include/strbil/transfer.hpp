// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <iosfwd>
#include <vector>

#include "strbil/structured_system.hpp"

namespace strbil {

/// Ordered argument tuple (s_1, ..., s_k) of a level-k transfer function.
using FrequencyTuple = std::vector<Complex>;

/// Value of G_k at one argument tuple: a p x m^k matrix.
struct TransferValue {
  int level = 0;
  ComplexMatrix matrix;
};

/// Evaluate the level-k transfer function
///   G_k(s_1,...,s_k) = C(s_k) K(s_k)^{-1} N(s_{k-1}) (I_m (x) K(s_{k-1})^{-1}) ...
/// by propagating an n x m^q column block right-to-left and applying
/// blockwise solves; no Kronecker factor is ever materialized. For m = 1 the
/// chain collapses to the scalar product of resolvent factors automatically.
/// Throws SingularMatrixError naming the tuple position whose K(s_i) is
/// singular.
TransferValue eval_transfer(const StructuredBilinearSystem& sys, const FrequencyTuple& freqs);

/// Mixed partial derivative of G_k with respect to each tuple argument,
/// multi_index[i] giving the order in s_{i+1} (sum capped at 4). Zero
/// multi-index delegates to eval_transfer exactly; otherwise iterated central
/// finite differences with one level of Richardson extrapolation, step per
/// variable eps^(1/(order+4)) * max(1, |s_i|).
TransferValue eval_transfer_partial(const StructuredBilinearSystem& sys,
                                    const FrequencyTuple& freqs,
                                    const std::vector<int>& multi_index);

struct ErrorGridPoint {
  double omega1 = 0.0;
  double omega2 = 0.0; // level 2 only
  double relative_error = 0.0;
  bool skipped = false; // ||G_k|| = 0: no relative error defined at this point
};

struct ErrorGrid {
  int level = 1;
  std::vector<ErrorGridPoint> points;
};

/// Pointwise relative error between full and reduced transfer functions on
/// the imaginary axis: level 1 sweeps G_1(i w) over the grid, level 2 sweeps
/// G_2(i w1, i w2) over the grid square (w1 outer, row-major). Errors are
/// measured in the matrix 2-norm; points where ||G_k|| = 0 are flagged as
/// skipped instead of dividing by zero. Evaluation order never changes the
/// result (points are written by index).
ErrorGrid relative_error_grid(const StructuredBilinearSystem& fom,
                              const StructuredBilinearSystem& rom, int level,
                              const std::vector<double>& grid);

/// CSV export: header `omega1[,omega2],relative_error`, one row per point,
/// 17 significant digits; skipped points write nan.
void write_csv(const ErrorGrid& grid, std::ostream& out);

namespace reference {

/// Naive transfer evaluation that materializes every Kronecker factor of the
/// product formula explicitly. Exponential in k; intended as the test oracle
/// for eval_transfer on tiny systems only.
TransferValue eval_transfer_kron(const StructuredBilinearSystem& sys,
                                 const FrequencyTuple& freqs);

} // namespace reference

} // namespace strbil
