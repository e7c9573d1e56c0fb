// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "strbil/structured_system.hpp"

namespace strbil {

/// Which projection matrices the interpolation data constrains.
enum class ProjectionSide { VOnly, WOnly, TwoSided, OneSidedWEqualsV };

/// One interpolation point tuple (s_1, ..., s_k) with per-point derivative
/// orders (all zero for plain interpolation).
struct PointTuple {
  std::vector<Complex> points;
  std::vector<int> orders;
};

/// Complete description of an interpolatory reduction: point tuples per side,
/// projection side, optional realification, and the rank tolerance used when
/// the stacked blocks are orthonormalized.
struct InterpolationSpec {
  std::vector<PointTuple> v_tuples;
  std::vector<PointTuple> w_tuples;
  ProjectionSide side = ProjectionSide::TwoSided;
  bool realify = false;
  double tol = 1e-10;
};

/// Throws InvalidSizeError unless the spec is well-formed: the sides in use
/// carry at least one tuple, every tuple is nonempty, and each orders list is
/// either empty (plain interpolation) or matches its points list with
/// nonnegative entries.
void validate(const InterpolationSpec& spec);

/// One span contribution with full provenance: which side and recursion level
/// produced it, the derivative order it realizes, and the point/order prefix
/// it was built from.
struct BasisBlock {
  ComplexMatrix columns; // n rows
  char side = 'V';       // 'V' or 'W'
  int level = 1;
  int derivative_order = 0;
  std::vector<Complex> source_points;
  std::vector<int> source_orders;
};

using BasisBlocks = std::vector<BasisBlock>;

/// Right-side blocks for one point tuple (sigma_1, ..., sigma_k):
///   V_1 = K(sigma_1)^{-1} B(sigma_1),
///   V_q = K(sigma_q)^{-1} [N_1(sigma_{q-1}) V_{q-1}, ..., N_m(sigma_{q-1}) V_{q-1}].
/// Block q has m^q columns. Throws SingularMatrixError naming the level whose
/// pencil is singular.
BasisBlocks build_V_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<Complex>& points);

/// Left-side blocks; points are consumed from the LAST one backward:
///   W_1 = K(s_k)^{-H} C(s_k)^H,
///   W_q = K(s_{k-q+1})^{-H} [N_1(s_{k-q+1})^H W_{q-1}, ..., N_m(s_{k-q+1})^H W_{q-1}].
/// Block q has p m^{q-1} columns.
BasisBlocks build_W_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<Complex>& points);

/// Hermite right-side blocks: for each level q emits the derivative ladder
/// j = 0..orders[q-1]. Level 1 is d^j(K^{-1}B)(sigma_1); the level step first
/// forms the orders[q-1]-th derivative of the chain through N(sigma_{q-1})
/// (Leibniz over the analytic factors), then applies d^j(K^{-1})(sigma_q) to
/// that constant block. All-zero orders reproduce build_V_blocks exactly.
BasisBlocks build_V_hermite_blocks(const StructuredBilinearSystem& sys,
                                   const std::vector<Complex>& points,
                                   const std::vector<int>& orders);

/// Hermite left-side blocks: mirror of build_V_hermite_blocks with
/// conjugate-transposed matrix functions; points AND orders are consumed from
/// the last index backward. Derivatives of K^{-H}C^H and K^{-H}N^H are the
/// conjugate transposes of the derivatives of the analytic products C K^{-1}
/// and N K^{-1}. All-zero orders reproduce build_W_blocks exactly.
BasisBlocks build_W_hermite_blocks(const StructuredBilinearSystem& sys,
                                   const std::vector<Complex>& points,
                                   const std::vector<int>& orders);

/// Multi-tuple conveniences: concatenate the blocks of every tuple in order
/// (the single-tuple builders realize one theorem instance each; practical
/// reductions use several tuples per level).
BasisBlocks build_V_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<PointTuple>& tuples);
BasisBlocks build_W_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<PointTuple>& tuples);

/// Stack all blocks side by side and orthonormalize. With realify set, each
/// block whose point prefix is non-real is paired with the block of the
/// conjugated prefix (same level, order, and order prefix; exact floating
/// match) and the pair is replaced by the real and imaginary parts of one
/// member — a real basis spanning the same space for real systems. Blocks
/// with an all-real prefix contribute their real part (plus the imaginary
/// part if it is nonzero). Columns are scaled to unit length before the rank
/// decision — only the spanned directions matter, and points several decades
/// apart produce column magnitudes the rank tolerance would otherwise mistake
/// for numerical noise. Throws RealifyImpossibleError when a non-real
/// block has no conjugate partner, EmptyBasisError when nothing survives.
ComplexMatrix assemble_basis(const BasisBlocks& blocks, bool realify, double tol = 1e-10);

/// Total column count of the stacked blocks before orthonormalization.
std::size_t total_columns(const BasisBlocks& blocks);

} // namespace strbil
