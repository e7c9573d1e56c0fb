// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <utility>

#include "strbil/linalg.hpp"

namespace strbil {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

linalg::LuFactorization<Complex> factor_level(const StructuredBilinearSystem& sys, Complex s,
                                              int level, const char* builder) {
  try {
    return linalg::LuFactorization<Complex>(sys.system_pencil(s));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(std::string(builder) + ": K(s) singular at level " +
                              std::to_string(level));
  }
}

/// [N_1^{(i)}(s) X, ..., N_m^{(i)}(s) X].
ComplexMatrix bilinear_derivative_action(const StructuredBilinearSystem& sys, Complex s, int i,
                                         const ComplexMatrix& X) {
  const std::size_t m = sys.num_inputs();
  ComplexMatrix out(sys.state_dim(), m * X.cols());
  for (std::size_t j = 1; j <= m; ++j)
    out.set_block(0, (j - 1) * X.cols(), linalg::multiply(sys.bilinear_map(j, s, i), X));
  return out;
}

/// [(N_1^{(i)}(s))^H X, ..., (N_m^{(i)}(s))^H X].
ComplexMatrix bilinear_derivative_adjoint_action(const StructuredBilinearSystem& sys, Complex s,
                                                 int i, const ComplexMatrix& X) {
  const std::size_t m = sys.num_inputs();
  ComplexMatrix out(sys.state_dim(), m * X.cols());
  for (std::size_t j = 1; j <= m; ++j)
    out.set_block(0, (j - 1) * X.cols(),
                  linalg::multiply_adjoint_left(sys.bilinear_map(j, s, i), X));
  return out;
}

void check_tuple(const std::vector<Complex>& points, const std::vector<int>& orders,
                 const char* builder) {
  if (points.empty()) throw InvalidSizeError(std::string(builder) + ": empty point tuple");
  if (orders.size() != points.size())
    throw InvalidSizeError(std::string(builder) + ": orders list must match points list");
  for (int o : orders)
    if (o < 0) throw InvalidSizeError(std::string(builder) + ": negative derivative order");
}

} // namespace

void validate(const InterpolationSpec& spec) {
  const bool uses_v = spec.side != ProjectionSide::WOnly;
  const bool uses_w = spec.side == ProjectionSide::WOnly || spec.side == ProjectionSide::TwoSided;
  if (uses_v && spec.v_tuples.empty())
    throw InvalidSizeError("interpolation spec: side requires at least one V tuple");
  if (uses_w && spec.w_tuples.empty())
    throw InvalidSizeError("interpolation spec: side requires at least one W tuple");
  // An empty orders list is shorthand for plain (all-zero) interpolation.
  const auto check_spec_tuple = [](const PointTuple& t, const char* where) {
    if (t.orders.empty()) {
      check_tuple(t.points, std::vector<int>(t.points.size(), 0), where);
      return;
    }
    check_tuple(t.points, t.orders, where);
  };
  for (const auto& t : spec.v_tuples) check_spec_tuple(t, "interpolation spec (V)");
  for (const auto& t : spec.w_tuples) check_spec_tuple(t, "interpolation spec (W)");
  if (!(spec.tol > 0.0)) throw InvalidSizeError("interpolation spec: tol must be positive");
}

BasisBlocks build_V_hermite_blocks(const StructuredBilinearSystem& sys,
                                   const std::vector<Complex>& points,
                                   const std::vector<int>& orders) {
  check_tuple(points, orders, "build_V_blocks");
  const std::size_t k = points.size();
  BasisBlocks out;

  const auto emit = [&](int level, int j, ComplexMatrix cols) {
    BasisBlock b;
    b.columns = std::move(cols);
    b.side = 'V';
    b.level = level;
    b.derivative_order = j;
    b.source_points.assign(points.begin(), points.begin() + level);
    b.source_orders.assign(orders.begin(), orders.begin() + level);
    out.push_back(std::move(b));
  };

  // Level 1: P[d] = d^d(K^{-1}B)(sigma_1), from K (K^{-1}B) = B by Leibniz.
  const Complex s1 = points[0];
  const auto lu1 = factor_level(sys, s1, 1, "build_V_blocks");
  std::vector<ComplexMatrix> P(orders[0] + 1);
  P[0] = lu1.solve(sys.input_map(s1));
  for (int d = 1; d <= orders[0]; ++d) {
    ComplexMatrix rhs = sys.input_map(s1, d);
    for (int i = 1; i <= d; ++i)
      rhs -= Complex(binom(d, i), 0.0) * linalg::multiply(sys.system_pencil(s1, i), P[d - i]);
    P[d] = lu1.solve(rhs);
  }
  for (int j = 0; j <= orders[0]; ++j) emit(1, j, P[j]);

  for (std::size_t q = 2; q <= k; ++q) {
    // Y = d^{l_{q-1}}( N (I_m (x) chain) )(sigma_{q-1}) with the previous
    // chain derivatives P[.] already known (Leibniz over the two factors).
    const Complex sp = points[q - 2];
    const int lp = orders[q - 2];
    ComplexMatrix Y;
    for (int i = 0; i <= lp; ++i) {
      ComplexMatrix term = bilinear_derivative_action(sys, sp, i, P[lp - i]);
      term *= Complex(binom(lp, i), 0.0);
      if (Y.empty())
        Y = std::move(term);
      else
        Y += term;
    }
    // T[d] = d^d(K^{-1})(sigma_q) Y for the constant block Y, from the
    // derivative recurrence of K^{-1} (K K^{-1} = I).
    const Complex sq = points[q - 1];
    const auto lu = factor_level(sys, sq, static_cast<int>(q), "build_V_blocks");
    std::vector<ComplexMatrix> T(orders[q - 1] + 1);
    T[0] = lu.solve(Y);
    for (int d = 1; d <= orders[q - 1]; ++d) {
      ComplexMatrix rhs(Y.rows(), Y.cols());
      for (int i = 1; i <= d; ++i)
        rhs += Complex(binom(d, i), 0.0) * linalg::multiply(sys.system_pencil(sq, i), T[d - i]);
      T[d] = Complex(-1.0, 0.0) * lu.solve(rhs);
    }
    for (int j = 0; j <= orders[q - 1]; ++j) emit(static_cast<int>(q), j, T[j]);
    P = std::move(T);
  }
  return out;
}

BasisBlocks build_W_hermite_blocks(const StructuredBilinearSystem& sys,
                                   const std::vector<Complex>& points,
                                   const std::vector<int>& orders) {
  check_tuple(points, orders, "build_W_blocks");
  const std::size_t theta = points.size();
  BasisBlocks out;

  // Level q consumes point theta-q+1 (last backward), orders likewise.
  const auto point_at = [&](std::size_t q) { return points[theta - q]; };
  const auto order_at = [&](std::size_t q) { return orders[theta - q]; };

  const auto emit = [&](int level, int i, ComplexMatrix cols) {
    BasisBlock b;
    b.columns = std::move(cols);
    b.side = 'W';
    b.level = level;
    b.derivative_order = i;
    b.source_points.assign(points.end() - level, points.end());
    b.source_orders.assign(orders.end() - level, orders.end());
    out.push_back(std::move(b));
  };

  // Level 1: R[d] = [d^d(C K^{-1})(s)]^H via the Leibniz recurrence for
  // (C K^{-1}) K = C, conjugate-transposed onto adjoint solves.
  const Complex p1 = point_at(1);
  const int mu1 = order_at(1);
  const auto lu1 = factor_level(sys, p1, 1, "build_W_blocks");
  std::vector<ComplexMatrix> R(mu1 + 1);
  for (int d = 0; d <= mu1; ++d) {
    ComplexMatrix rhs = adjoint(sys.output_map(p1, d));
    for (int i = 0; i < d; ++i)
      rhs -= Complex(binom(d, i), 0.0) *
             linalg::multiply_adjoint_left(sys.system_pencil(p1, d - i), R[i]);
    R[d] = lu1.solve_adjoint(rhs);
  }
  for (int i = 0; i <= mu1; ++i) emit(1, i, R[i]);

  for (std::size_t q = 2; q <= theta; ++q) {
    const ComplexMatrix X = R[static_cast<std::size_t>(order_at(q - 1))];
    const Complex pq = point_at(q);
    const int mu = order_at(q);
    const auto lu = factor_level(sys, pq, static_cast<int>(q), "build_W_blocks");

    // R_new[d] = sum_i binom(d,i) S_{d-i}(base[i]) where base[i] stacks the
    // (d^i N_j)^H actions and S_e applies [d^e(K^{-1})]^H via adjoint solves.
    std::vector<std::vector<ComplexMatrix>> S(mu + 1);
    for (int i = 0; i <= mu; ++i) {
      const ComplexMatrix base = bilinear_derivative_adjoint_action(sys, pq, i, X);
      S[i].resize(mu - i + 1);
      S[i][0] = lu.solve_adjoint(base);
      for (int e = 1; e <= mu - i; ++e) {
        ComplexMatrix rhs(base.rows(), base.cols());
        for (int t = 1; t <= e; ++t)
          rhs += Complex(binom(e, t), 0.0) *
                 linalg::multiply_adjoint_left(sys.system_pencil(pq, t), S[i][e - t]);
        S[i][e] = Complex(-1.0, 0.0) * lu.solve_adjoint(rhs);
      }
    }
    std::vector<ComplexMatrix> Rn(mu + 1);
    for (int d = 0; d <= mu; ++d) {
      ComplexMatrix acc = S[0][d];
      for (int i = 1; i <= d; ++i) acc += Complex(binom(d, i), 0.0) * S[i][d - i];
      Rn[d] = std::move(acc);
    }
    for (int i = 0; i <= mu; ++i) emit(static_cast<int>(q), i, Rn[i]);
    R = std::move(Rn);
  }
  return out;
}

BasisBlocks build_V_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<Complex>& points) {
  return build_V_hermite_blocks(sys, points, std::vector<int>(points.size(), 0));
}

BasisBlocks build_W_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<Complex>& points) {
  return build_W_hermite_blocks(sys, points, std::vector<int>(points.size(), 0));
}

BasisBlocks build_V_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<PointTuple>& tuples) {
  BasisBlocks out;
  for (const auto& t : tuples) {
    BasisBlocks b = t.orders.empty() ? build_V_blocks(sys, t.points)
                                     : build_V_hermite_blocks(sys, t.points, t.orders);
    std::move(b.begin(), b.end(), std::back_inserter(out));
  }
  return out;
}

BasisBlocks build_W_blocks(const StructuredBilinearSystem& sys,
                           const std::vector<PointTuple>& tuples) {
  BasisBlocks out;
  for (const auto& t : tuples) {
    BasisBlocks b = t.orders.empty() ? build_W_blocks(sys, t.points)
                                     : build_W_hermite_blocks(sys, t.points, t.orders);
    std::move(b.begin(), b.end(), std::back_inserter(out));
  }
  return out;
}

std::size_t total_columns(const BasisBlocks& blocks) {
  std::size_t c = 0;
  for (const auto& b : blocks) c += b.columns.cols();
  return c;
}

namespace {

bool all_points_real(const BasisBlock& b) {
  return std::all_of(b.source_points.begin(), b.source_points.end(),
                     [](Complex s) { return s.imag() == 0.0; });
}

bool conjugate_partners(const BasisBlock& a, const BasisBlock& b) {
  if (a.side != b.side || a.level != b.level || a.derivative_order != b.derivative_order)
    return false;
  if (a.source_orders != b.source_orders) return false;
  if (a.source_points.size() != b.source_points.size()) return false;
  for (std::size_t i = 0; i < a.source_points.size(); ++i)
    if (a.source_points[i].real() != b.source_points[i].real() ||
        a.source_points[i].imag() != -b.source_points[i].imag())
      return false;
  return true;
}

} // namespace

ComplexMatrix assemble_basis(const BasisBlocks& blocks, bool realify, double tol) {
  if (blocks.empty()) throw EmptyBasisError("assemble_basis: no blocks given");
  std::vector<ComplexMatrix> parts;
  if (!realify) {
    for (const auto& b : blocks) parts.push_back(b.columns);
  } else {
    std::vector<bool> consumed(blocks.size(), false);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (consumed[i]) continue;
      consumed[i] = true;
      const ComplexMatrix re = to_complex(real_part(blocks[i].columns));
      const ComplexMatrix im = to_complex(imag_part(blocks[i].columns));
      if (all_points_real(blocks[i])) {
        parts.push_back(re);
        // A real system evaluated at real points yields exactly real blocks;
        // keep the imaginary part only if something nonzero is present.
        if (linalg::max_abs(im) != 0.0) parts.push_back(im);
        continue;
      }
      bool paired = false;
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (!consumed[j] && conjugate_partners(blocks[i], blocks[j])) {
          consumed[j] = true;
          paired = true;
          break;
        }
      }
      if (!paired)
        throw RealifyImpossibleError(
            "assemble_basis: point tuples are not closed under conjugation");
      // conj(block at conjugated points) equals the block itself for real
      // systems, so {Re, Im} of one member spans the pair.
      parts.push_back(re);
      parts.push_back(im);
    }
  }
  ComplexMatrix stacked;
  for (const auto& P : parts) stacked = hcat(stacked, P);
  // Only the direction spanned by each column matters, but raw column
  // magnitudes can differ by many orders of magnitude when interpolation
  // points span several frequency decades (each resolvent solve scales the
  // column by roughly 1/|s|^d).  Scale every nonzero column to unit length so
  // the rank tolerance below compares angles rather than magnitudes; zero
  // columns are left in place for orthonormalize_columns to discard.
  for (std::size_t j = 0; j < stacked.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < stacked.rows(); ++i) sq += std::norm(stacked(i, j));
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (std::size_t i = 0; i < stacked.rows(); ++i) stacked(i, j) *= inv;
    }
  }
  return linalg::orthonormalize_columns(stacked, tol);
}

} // namespace strbil
