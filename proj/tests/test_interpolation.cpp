// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include <doctest.h>

#include <cmath>

#include "strbil/interpolation.hpp"
#include "strbil/linalg.hpp"
#include "strbil/structured_system.hpp"
#include "support.hpp"

using strbil::BasisBlocks;
using strbil::Complex;
using strbil::ComplexMatrix;
using strbil::InterpolationSpec;
using strbil::PointTuple;
using strbil::ProjectionSide;
using strbil::StructuredBilinearSystem;

namespace {

ComplexMatrix scalar(double re) {
  ComplexMatrix M(1, 1);
  M(0, 0) = re;
  return M;
}

// K(s) = s + 1, N = 0.5, B = C = 1.
StructuredBilinearSystem scalar_chain() {
  strbil::FirstOrderForm f;
  f.E = scalar(1.0);
  f.A = scalar(-1.0);
  f.N = {scalar(0.5)};
  f.B = scalar(1.0);
  f.C = scalar(1.0);
  return StructuredBilinearSystem(std::move(f));
}

ComplexMatrix stack_columns(const BasisBlocks& blocks) {
  ComplexMatrix out;
  for (const auto& b : blocks) out = strbil::hcat(out, b.columns);
  return out;
}

// Central difference in variable `var` (real step) of the level-`level`
// plain block at `points`.
ComplexMatrix fd_block(const StructuredBilinearSystem& sys, std::vector<Complex> points,
                       std::size_t level, std::size_t var, double h, bool left_side) {
  auto eval = [&](Complex shift) {
    std::vector<Complex> p = points;
    p[var] += shift;
    const BasisBlocks blocks = left_side ? build_W_blocks(sys, p) : build_V_blocks(sys, p);
    return blocks[level - 1].columns;
  };
  ComplexMatrix out = eval(Complex(h, 0.0)) - eval(Complex(-h, 0.0));
  out *= Complex(1.0 / (2.0 * h), 0.0);
  return out;
}

} // namespace

TEST_CASE("validate enforces tuple presence per side and well-formed tuples") {
  InterpolationSpec spec;
  spec.side = ProjectionSide::VOnly;
  CHECK_THROWS_AS(validate(spec), strbil::InvalidSizeError);

  spec.v_tuples.push_back({{Complex(1.0)}, {}});
  CHECK_NOTHROW(validate(spec));

  spec.side = ProjectionSide::TwoSided;
  CHECK_THROWS_AS(validate(spec), strbil::InvalidSizeError); // no W tuples
  spec.w_tuples.push_back({{Complex(2.0)}, {0}});
  CHECK_NOTHROW(validate(spec));

  spec.side = ProjectionSide::WOnly;
  spec.v_tuples.clear();
  CHECK_NOTHROW(validate(spec)); // W side only needs W tuples

  InterpolationSpec bad1;
  bad1.side = ProjectionSide::VOnly;
  bad1.v_tuples.push_back({{}, {}}); // empty point tuple
  CHECK_THROWS_AS(validate(bad1), strbil::InvalidSizeError);

  InterpolationSpec bad2;
  bad2.side = ProjectionSide::VOnly;
  bad2.v_tuples.push_back({{Complex(1.0), Complex(2.0)}, {0}}); // length mismatch
  CHECK_THROWS_AS(validate(bad2), strbil::InvalidSizeError);

  InterpolationSpec bad3;
  bad3.side = ProjectionSide::VOnly;
  bad3.v_tuples.push_back({{Complex(1.0)}, {-1}}); // negative order
  CHECK_THROWS_AS(validate(bad3), strbil::InvalidSizeError);

  InterpolationSpec bad4;
  bad4.side = ProjectionSide::VOnly;
  bad4.v_tuples.push_back({{Complex(1.0)}, {0}});
  bad4.tol = 0.0;
  CHECK_THROWS_AS(validate(bad4), strbil::InvalidSizeError);
}

TEST_CASE("plain right blocks: scalar chain values and provenance") {
  const StructuredBilinearSystem sys = scalar_chain();

  const BasisBlocks one = build_V_blocks(sys, std::vector<Complex>{Complex(1.0)});
  REQUIRE(one.size() == 1);
  CHECK(one[0].side == 'V');
  CHECK(one[0].level == 1);
  CHECK(one[0].derivative_order == 0);
  REQUIRE(one[0].source_points.size() == 1);
  CHECK(one[0].source_points[0] == Complex(1.0));
  CHECK(std::abs(one[0].columns(0, 0) - Complex(0.5)) < 1e-15);

  const BasisBlocks two = build_V_blocks(sys, std::vector<Complex>{Complex(1.0), Complex(1.0)});
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two[1].columns(0, 0) - Complex(0.125)) < 1e-15);
  CHECK(two[1].level == 2);
  CHECK(two[1].source_points.size() == 2);

  // Distinct points: level 2 uses K(s_2)^{-1} N K(s_1)^{-1} B = 1/12.
  const BasisBlocks mixed = build_V_blocks(sys, std::vector<Complex>{Complex(1.0), Complex(2.0)});
  CHECK(std::abs(mixed[1].columns(0, 0) - Complex(1.0 / 12.0)) < 1e-15);
}

TEST_CASE("plain right blocks: matrix recursion against direct linear algebra") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(4, 2, 2, 301);
  const std::vector<Complex> pts = {Complex(0.8, 0.4), Complex(1.2, -0.6)};
  const BasisBlocks blocks = build_V_blocks(sys, pts);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].columns.cols() == 2);  // m
  CHECK(blocks[1].columns.cols() == 4);  // m^2

  const ComplexMatrix V1 =
      strbil::linalg::solve_dense(sys.system_pencil(pts[0]), sys.input_map(pts[0]));
  CHECK(testsupport::max_abs_diff(blocks[0].columns, V1) < 1e-14);

  ComplexMatrix rhs(4, 4);
  rhs.set_block(0, 0, strbil::linalg::multiply(sys.bilinear_map(1, pts[0]), V1));
  rhs.set_block(0, 2, strbil::linalg::multiply(sys.bilinear_map(2, pts[0]), V1));
  const ComplexMatrix V2 = strbil::linalg::solve_dense(sys.system_pencil(pts[1]), rhs);
  CHECK(testsupport::max_abs_diff(blocks[1].columns, V2) < 1e-13);
}

TEST_CASE("plain left blocks: scalar values and adjoint recursion") {
  const StructuredBilinearSystem sys = scalar_chain();

  const BasisBlocks one = build_W_blocks(sys, std::vector<Complex>{Complex(1.0)});
  REQUIRE(one.size() == 1);
  CHECK(one[0].side == 'W');
  CHECK(std::abs(one[0].columns(0, 0) - Complex(0.5)) < 1e-15);

  const BasisBlocks two = build_W_blocks(sys, std::vector<Complex>{Complex(1.0), Complex(1.0)});
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two[1].columns(0, 0) - Complex(0.125)) < 1e-15);

  // Matrix case: W_1 = K(s_k)^{-H} C(s_k)^H, W_2 = K(s_1)^{-H} [N_j(s_1)^H W_1].
  const StructuredBilinearSystem mat = testsupport::random_first_order(4, 2, 2, 302);
  const std::vector<Complex> pts = {Complex(0.7, 0.5), Complex(1.1, -0.3)};
  const BasisBlocks wb = build_W_blocks(mat, pts);
  REQUIRE(wb.size() == 2);
  CHECK(wb[0].columns.cols() == 2);  // p
  CHECK(wb[1].columns.cols() == 4);  // p m

  const strbil::linalg::LuFactorization<Complex> lu_last(mat.system_pencil(pts[1]));
  const ComplexMatrix W1 = lu_last.solve_adjoint(strbil::adjoint(mat.output_map(pts[1])));
  CHECK(testsupport::max_abs_diff(wb[0].columns, W1) < 1e-14);

  ComplexMatrix rhs(4, 4);
  rhs.set_block(0, 0, strbil::linalg::multiply_adjoint_left(mat.bilinear_map(1, pts[0]), W1));
  rhs.set_block(0, 2, strbil::linalg::multiply_adjoint_left(mat.bilinear_map(2, pts[0]), W1));
  const strbil::linalg::LuFactorization<Complex> lu_first(mat.system_pencil(pts[0]));
  const ComplexMatrix W2 = lu_first.solve_adjoint(rhs);
  CHECK(testsupport::max_abs_diff(wb[1].columns, W2) < 1e-13);

  // Left blocks consume points from the back: source_points keeps the suffix.
  CHECK(wb[0].source_points.size() == 1);
  CHECK(wb[0].source_points[0] == pts[1]);
  CHECK(wb[1].source_points.size() == 2);
  CHECK(wb[1].source_points[0] == pts[0]);
}

TEST_CASE("hermite right blocks: scalar derivative ladders") {
  const StructuredBilinearSystem sys = scalar_chain();

  // Level 1 ladder at sigma = 1: d^j [1/(s+1)] -> 0.5, -0.25.
  const BasisBlocks lvl1 = build_V_hermite_blocks(sys, {Complex(1.0)}, {1});
  REQUIRE(lvl1.size() == 2);
  CHECK(lvl1[0].derivative_order == 0);
  CHECK(lvl1[1].derivative_order == 1);
  CHECK(std::abs(lvl1[0].columns(0, 0) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(lvl1[1].columns(0, 0) - Complex(-0.25)) < 1e-15);

  // Level 2 with orders (1, 1): blocks at values -1/16 and 1/32.
  const BasisBlocks lvl2 = build_V_hermite_blocks(sys, {Complex(1.0), Complex(1.0)}, {1, 1});
  REQUIRE(lvl2.size() == 4);
  CHECK(std::abs(lvl2[2].columns(0, 0) - Complex(-0.0625)) < 1e-15);
  CHECK(std::abs(lvl2[3].columns(0, 0) - Complex(0.03125)) < 1e-15);
  CHECK(lvl2[2].level == 2);
  CHECK(lvl2[3].derivative_order == 1);
}

TEST_CASE("hermite left blocks: scalar derivative ladder") {
  const StructuredBilinearSystem sys = scalar_chain();
  const BasisBlocks lvl1 = build_W_hermite_blocks(sys, {Complex(1.0)}, {1});
  REQUIRE(lvl1.size() == 2);
  CHECK(std::abs(lvl1[0].columns(0, 0) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(lvl1[1].columns(0, 0) - Complex(-0.25)) < 1e-15);
}

TEST_CASE("zero orders reproduce the plain blocks exactly") {
  const StructuredBilinearSystem sys = testsupport::random_second_order(3, 2, 2, 303);
  const std::vector<Complex> pts = {Complex(0.9, 0.2), Complex(1.3, -0.4)};

  const BasisBlocks plainV = build_V_blocks(sys, pts);
  const BasisBlocks hermV = build_V_hermite_blocks(sys, pts, {0, 0});
  REQUIRE(plainV.size() == hermV.size());
  for (std::size_t i = 0; i < plainV.size(); ++i)
    CHECK(testsupport::max_abs_diff(plainV[i].columns, hermV[i].columns) == 0.0);

  const BasisBlocks plainW = build_W_blocks(sys, pts);
  const BasisBlocks hermW = build_W_hermite_blocks(sys, pts, {0, 0});
  REQUIRE(plainW.size() == hermW.size());
  for (std::size_t i = 0; i < plainW.size(); ++i)
    CHECK(testsupport::max_abs_diff(plainW[i].columns, hermW[i].columns) == 0.0);
}

TEST_CASE("hermite blocks match finite differences of the plain recursion") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(3, 1, 1, 304);
  const std::vector<Complex> pts = {Complex(0.9, 0.3), Complex(1.2, -0.5)};
  const double h = 1e-4;

  // Right side, orders (1, 1): level-2 block with ladder order 1 realizes
  // the mixed derivative of Z_2 in (s_1, s_2).
  const BasisBlocks herm = build_V_hermite_blocks(sys, pts, {1, 1});
  REQUIRE(herm.size() == 4);

  // d/ds_2 Z_2 with s_1-derivative order 1: nest central differences.
  auto z2_ds1 = [&](Complex shift2) {
    std::vector<Complex> p = pts;
    p[1] += shift2;
    return fd_block(sys, p, 2, 0, h, false);
  };
  ComplexMatrix mixed = z2_ds1(Complex(h, 0.0)) - z2_ds1(Complex(-h, 0.0));
  mixed *= Complex(1.0 / (2.0 * h), 0.0);
  const double scale = std::max(1.0, strbil::linalg::max_abs(mixed));
  CHECK(testsupport::max_abs_diff(herm[3].columns, mixed) / scale < 1e-6);

  // The ladder-order-0 level-2 block realizes only the s_1 derivative.
  const ComplexMatrix d1 = fd_block(sys, pts, 2, 0, h, false);
  CHECK(testsupport::max_abs_diff(herm[2].columns, d1) /
            std::max(1.0, strbil::linalg::max_abs(d1)) <
        1e-6);

  // Left side, orders (1, 0): the level-2 ladder differentiates the earlier
  // point of the window (here s_1).
  const BasisBlocks hermW = build_W_hermite_blocks(sys, pts, {1, 0});
  REQUIRE(hermW.size() == 3);
  const ComplexMatrix dW = fd_block(sys, pts, 2, 0, h, true);
  CHECK(testsupport::max_abs_diff(hermW[2].columns, dW) /
            std::max(1.0, strbil::linalg::max_abs(dW)) <
        1e-6);
}

TEST_CASE("multi-tuple builders concatenate per-tuple blocks in order") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(3, 1, 1, 305);
  const std::vector<PointTuple> tuples = {{{Complex(1.0, 0.5)}, {}},
                                          {{Complex(0.8), Complex(1.4)}, {0, 1}}};
  const BasisBlocks blocks = build_V_blocks(sys, tuples);
  REQUIRE(blocks.size() == 4); // 1 + (1 + 2)
  CHECK(blocks[0].source_points[0] == Complex(1.0, 0.5));
  CHECK(blocks[1].source_points[0] == Complex(0.8));
  CHECK(blocks[3].level == 2);
  CHECK(blocks[3].derivative_order == 1);
}

TEST_CASE("assemble_basis produces an orthonormal basis spanning the blocks") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(6, 2, 2, 306);
  const std::vector<Complex> pts = {Complex(0.9, 0.7), Complex(1.1, -0.2)};
  const BasisBlocks blocks = build_V_blocks(sys, pts);
  CHECK(total_columns(blocks) == 6);

  const ComplexMatrix V = assemble_basis(blocks, /*realify=*/false);
  CHECK(V.rows() == 6);
  CHECK(V.cols() == 6);
  const ComplexMatrix G = strbil::linalg::multiply_adjoint_left(V, V);
  CHECK(testsupport::max_abs_diff(G, ComplexMatrix::identity(V.cols())) < 1e-13);

  // Every block column lies in span(V).
  const ComplexMatrix stacked = stack_columns(blocks);
  const ComplexMatrix recon =
      strbil::linalg::multiply(V, strbil::linalg::multiply_adjoint_left(V, stacked));
  CHECK(testsupport::max_abs_diff(recon, stacked) < 1e-11);

  // Duplicated blocks do not inflate the rank.
  BasisBlocks doubled = blocks;
  doubled.insert(doubled.end(), blocks.begin(), blocks.end());
  CHECK(assemble_basis(doubled, false).cols() == 6);

  CHECK_THROWS_AS(assemble_basis(BasisBlocks{}, false), strbil::EmptyBasisError);
}

TEST_CASE("realified bases: conjugate pairs become real with the same span") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(8, 1, 1, 307);
  const Complex sigma(0.6, 1.1);
  const std::vector<PointTuple> tuples = {{{sigma, sigma}, {}},
                                          {{std::conj(sigma), std::conj(sigma)}, {}}};
  const BasisBlocks blocks = build_V_blocks(sys, tuples);

  const ComplexMatrix V = assemble_basis(blocks, /*realify=*/true);
  CHECK(strbil::is_real(V));
  CHECK(V.cols() == 4);

  // The complex blocks lie in the span of the real basis.
  const ComplexMatrix stacked = stack_columns(blocks);
  const ComplexMatrix recon =
      strbil::linalg::multiply(V, strbil::linalg::multiply_adjoint_left(V, stacked));
  CHECK(testsupport::max_abs_diff(recon, stacked) < 1e-10);
}

TEST_CASE("realify keeps real-point blocks and rejects unpaired complex points") {
  const StructuredBilinearSystem sys = testsupport::random_first_order(5, 1, 1, 308);

  const BasisBlocks real_blocks =
      build_V_blocks(sys, std::vector<Complex>{Complex(0.9), Complex(1.2)});
  const ComplexMatrix V = assemble_basis(real_blocks, true);
  CHECK(strbil::is_real(V));
  CHECK(V.cols() == 2);

  const BasisBlocks unpaired = build_V_blocks(sys, std::vector<Complex>{Complex(0.9, 0.4)});
  CHECK_THROWS_AS(assemble_basis(unpaired, true), strbil::RealifyImpossibleError);
}
