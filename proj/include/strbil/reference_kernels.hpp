// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include "strbil/matrix.hpp"

namespace strbil::reference {

/// Serial twin of linalg::multiply, kept as the correctness baseline for the
/// parallelized kernel and as the comparison target in the benchmark tool.
template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& A, const Matrix<Scalar>& B);

/// Serial LU solve (partial pivoting, same pivot tolerance rule as
/// linalg::LuFactorization) with no parallel trailing update.
template <typename Scalar>
Matrix<Scalar> solve_dense(const Matrix<Scalar>& A, const Matrix<Scalar>& B,
                           double pivot_tol = 1e-10);

} // namespace strbil::reference
