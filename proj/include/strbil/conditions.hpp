// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <string>
#include <vector>

#include "strbil/interpolation.hpp"
#include "strbil/structured_system.hpp"

namespace strbil {

/// One matched quantity: the level-k kernel (k = arguments.size()) evaluated
/// at `arguments` and differentiated orders[i] times in the i-th argument.
/// `origin` records which basis earns the condition: 'V' (right side), 'W'
/// (left side), or 'M' (mixed two-sided).
struct InterpolationCondition {
  std::vector<Complex> arguments;
  std::vector<int> orders;
  char origin = 'V';
};

/// Enumerate every interpolation condition the spec guarantees.
///
/// A right tuple (sigma_1..sigma_k; ell_1..ell_k) yields, for each level
/// q = 1..k and ladder order j = 0..ell_q, the condition at arguments
/// (sigma_1..sigma_q) with orders (ell_1..ell_{q-1}, j). A left tuple
/// (zeta_1..zeta_theta; nu_1..nu_theta) mirrors this from the back: level
/// eta uses the last eta points with orders (i, nu_{theta-eta+2}..nu_theta),
/// i = 0..nu_{theta-eta+1}. Two-sided reductions additionally match, for
/// every tuple pair and every (q, eta, j, i), the level-(q+eta) kernel at
/// (sigma_1..sigma_q, zeta_{theta-eta+1}..zeta_theta) with orders
/// (ell_1..ell_{q-1}, j, i, nu_{theta-eta+2}..nu_theta). Side VOnly and
/// OneSidedWEqualsV yield right conditions only, WOnly left only. Exact
/// duplicates (bitwise equal arguments and orders) are listed once, first
/// occurrence kept. A plain two-sided single-tuple spec therefore yields
/// k + theta + k*theta conditions.
std::vector<InterpolationCondition> implied_conditions(const InterpolationSpec& spec);

/// Outcome of testing one condition on a (full, reduced) pair.
struct ConditionCheck {
  InterpolationCondition condition;
  double relative_error = 0.0;
  bool passed = false;
};

/// Evaluate each condition on both systems (exact transfer evaluation for
/// zero orders, the finite-difference derivative oracle otherwise) and
/// compare in the spectral norm relative to the full-order value, with the
/// convention 0/0 = 0. Systems must share m and p (InvalidSizeError); tol
/// must be positive.
std::vector<ConditionCheck> check_conditions(const StructuredBilinearSystem& fom,
                                             const StructuredBilinearSystem& rom,
                                             const std::vector<InterpolationCondition>& conditions,
                                             double tol);

/// Human-readable one-liner, e.g. "G2(1+2i, 1-2i) orders (1,0) [mixed]".
std::string describe(const InterpolationCondition& condition);

} // namespace strbil
