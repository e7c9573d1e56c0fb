// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/transfer.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "strbil/linalg.hpp"

namespace strbil {

namespace {

std::size_t int_pow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

linalg::LuFactorization<Complex> factor_pencil(const StructuredBilinearSystem& sys, Complex s,
                                               std::size_t tuple_position) {
  try {
    return linalg::LuFactorization<Complex>(sys.system_pencil(s));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("eval_transfer: K(s) singular at tuple position " +
                              std::to_string(tuple_position));
  }
}

/// [N_1(s) Z, ..., N_m(s) Z]: the action of N(s) (I_m (x) Z) built block by
/// block; the new bilinear index becomes the slowest-varying column index.
ComplexMatrix bilinear_action(const StructuredBilinearSystem& sys, Complex s,
                              const ComplexMatrix& Z) {
  const std::size_t m = sys.num_inputs();
  ComplexMatrix out(sys.state_dim(), m * Z.cols());
  for (std::size_t j = 1; j <= m; ++j)
    out.set_block(0, (j - 1) * Z.cols(), linalg::multiply(sys.bilinear_map(j, s), Z));
  return out;
}

} // namespace

TransferValue eval_transfer(const StructuredBilinearSystem& sys, const FrequencyTuple& freqs) {
  if (freqs.empty()) throw InvalidSizeError("eval_transfer: at least one frequency required");
  const std::size_t k = freqs.size();
  ComplexMatrix Z = factor_pencil(sys, freqs[0], 1).solve(sys.input_map(freqs[0]));
  for (std::size_t q = 2; q <= k; ++q)
    Z = factor_pencil(sys, freqs[q - 1], q).solve(bilinear_action(sys, freqs[q - 2], Z));
  TransferValue out;
  out.level = static_cast<int>(k);
  out.matrix = linalg::multiply(sys.output_map(freqs[k - 1]), Z);
  return out;
}

namespace {

/// Iterated central differences: reduce the first pending derivative order by
/// one, evaluate at s_i +/- h_i, recurse. Steps stay fixed relative to the
/// base tuple so the iterated stencil telescopes into the classical central
/// formula for each variable.
ComplexMatrix fd_recurse(const StructuredBilinearSystem& sys, FrequencyTuple freqs,
                         std::vector<int> pending, const std::vector<double>& steps) {
  std::size_t i = 0;
  while (i < pending.size() && pending[i] == 0) ++i;
  if (i == pending.size()) return eval_transfer(sys, freqs).matrix;
  pending[i] -= 1;
  const double h = steps[i];
  FrequencyTuple plus = freqs, minus = freqs;
  plus[i] += h;
  minus[i] -= h;
  ComplexMatrix diff =
      fd_recurse(sys, plus, pending, steps) - fd_recurse(sys, minus, pending, steps);
  diff *= Complex(1.0 / (2.0 * h), 0.0);
  return diff;
}

} // namespace

TransferValue eval_transfer_partial(const StructuredBilinearSystem& sys,
                                    const FrequencyTuple& freqs,
                                    const std::vector<int>& multi_index) {
  if (multi_index.size() != freqs.size())
    throw InvalidSizeError("eval_transfer_partial: multi-index length must match tuple length");
  int total = 0;
  for (int j : multi_index) {
    if (j < 0) throw InvalidSizeError("eval_transfer_partial: negative derivative order");
    total += j;
  }
  if (total > 4)
    throw InvalidSizeError("eval_transfer_partial: total derivative order capped at 4");
  if (total == 0) return eval_transfer(sys, freqs);

  // Step per variable balancing O(h^4) extrapolated truncation error against
  // rounding noise amplified by the order-j divided difference.
  std::vector<double> steps(freqs.size(), 0.0);
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double expo = 1.0 / (multi_index[i] + 4);
    steps[i] = std::pow(std::numeric_limits<double>::epsilon(), expo) *
               std::max(1.0, std::abs(freqs[i]));
  }
  const ComplexMatrix coarse = fd_recurse(sys, freqs, multi_index, steps);
  std::vector<double> half = steps;
  for (double& h : half) h *= 0.5;
  const ComplexMatrix fine = fd_recurse(sys, freqs, multi_index, half);

  TransferValue out;
  out.level = static_cast<int>(freqs.size());
  out.matrix = Complex(4.0 / 3.0, 0.0) * fine - Complex(1.0 / 3.0, 0.0) * coarse;
  return out;
}

namespace {

/// Everything reusable per grid frequency for one system: the factored
/// pencil, Z_1 = K^{-1} B, the output map, and (level 2) the propagated
/// bilinear block Y = [N_1 Z_1, ..., N_m Z_1].
struct GridPointData {
  ComplexMatrix C;
  ComplexMatrix Z1;
  ComplexMatrix Y;
  std::unique_ptr<linalg::LuFactorization<Complex>> lu;
};

std::vector<GridPointData> precompute_grid(const StructuredBilinearSystem& sys, int level,
                                           const std::vector<double>& grid) {
  std::vector<GridPointData> data(grid.size());
  std::atomic<bool> failed{false};
  std::exception_ptr eptr = nullptr;
  const std::int64_t np = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < np; ++idx) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const Complex s(0.0, grid[static_cast<std::size_t>(idx)]);
      GridPointData& d = data[static_cast<std::size_t>(idx)];
      d.lu = std::make_unique<linalg::LuFactorization<Complex>>(sys.system_pencil(s));
      d.C = sys.output_map(s);
      d.Z1 = d.lu->solve(sys.input_map(s));
      if (level == 2) d.Y = bilinear_action(sys, s, d.Z1);
    } catch (...) {
#pragma omp critical
      {
        if (!eptr) eptr = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (eptr) std::rethrow_exception(eptr);
  return data;
}

} // namespace

ErrorGrid relative_error_grid(const StructuredBilinearSystem& fom,
                              const StructuredBilinearSystem& rom, int level,
                              const std::vector<double>& grid) {
  if (fom.num_inputs() != rom.num_inputs() || fom.num_outputs() != rom.num_outputs())
    throw InvalidSizeError("relative_error_grid: systems must share input/output dimensions");
  if (level != 1 && level != 2)
    throw InvalidSizeError("relative_error_grid: level must be 1 or 2");
  if (grid.empty()) throw InvalidSizeError("relative_error_grid: empty frequency grid");

  const std::vector<GridPointData> fd = precompute_grid(fom, level, grid);
  const std::vector<GridPointData> rd = precompute_grid(rom, level, grid);

  ErrorGrid out;
  out.level = level;
  const std::size_t np = grid.size();

  const auto record = [](ErrorGridPoint& pt, const ComplexMatrix& G, const ComplexMatrix& Gr) {
    const double den = linalg::spectral_norm(G);
    if (den == 0.0) {
      pt.skipped = true;
      pt.relative_error = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    pt.relative_error = linalg::spectral_norm(G - Gr) / den;
  };

  if (level == 1) {
    out.points.resize(np);
    const std::int64_t n1 = static_cast<std::int64_t>(np);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < n1; ++idx) {
      const std::size_t i = static_cast<std::size_t>(idx);
      ErrorGridPoint& pt = out.points[i];
      pt.omega1 = grid[i];
      record(pt, linalg::multiply(fd[i].C, fd[i].Z1), linalg::multiply(rd[i].C, rd[i].Z1));
    }
    return out;
  }

  out.points.resize(np * np);
  const std::int64_t n2 = static_cast<std::int64_t>(np * np);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < n2; ++idx) {
    const std::size_t i1 = static_cast<std::size_t>(idx) / np; // omega1 outer
    const std::size_t i2 = static_cast<std::size_t>(idx) % np;
    ErrorGridPoint& pt = out.points[static_cast<std::size_t>(idx)];
    pt.omega1 = grid[i1];
    pt.omega2 = grid[i2];
    const ComplexMatrix G = linalg::multiply(fd[i2].C, fd[i2].lu->solve(fd[i1].Y));
    const ComplexMatrix Gr = linalg::multiply(rd[i2].C, rd[i2].lu->solve(rd[i1].Y));
    record(pt, G, Gr);
  }
  return out;
}

void write_csv(const ErrorGrid& grid, std::ostream& out) {
  char buf[128];
  if (grid.level == 1) {
    out << "omega1,relative_error\n";
    for (const auto& pt : grid.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pt.omega1, pt.relative_error);
      out << buf;
    }
    return;
  }
  out << "omega1,omega2,relative_error\n";
  for (const auto& pt : grid.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pt.omega1, pt.omega2,
                  pt.relative_error);
    out << buf;
  }
}

namespace reference {

TransferValue eval_transfer_kron(const StructuredBilinearSystem& sys,
                                 const FrequencyTuple& freqs) {
  if (freqs.empty()) throw InvalidSizeError("eval_transfer_kron: at least one frequency required");
  const std::size_t k = freqs.size();
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.num_inputs();

  const auto inv_pencil = [&](Complex s) {
    return linalg::solve_dense(sys.system_pencil(s), ComplexMatrix::identity(n));
  };

  // G_k = C(s_k) K(s_k)^{-1}
  //       prod_{j=1}^{k-1} (I_{m^{j-1}} (x) N(s_{k-j})) (I_{m^j} (x) K(s_{k-j})^{-1})
  //       (I_{m^{k-1}} (x) B(s_1)), all factors formed explicitly.
  ComplexMatrix acc = linalg::multiply(sys.output_map(freqs[k - 1]), inv_pencil(freqs[k - 1]));
  for (std::size_t j = 1; j + 1 <= k; ++j) {
    const Complex s = freqs[k - j - 1];
    const ComplexMatrix Nrow = eval_N_aggregate(sys, s, AggregateLayout::RowConcat, 0);
    acc = linalg::multiply(
        acc, linalg::kron(ComplexMatrix::identity(int_pow(m, j - 1)), Nrow));
    acc = linalg::multiply(
        acc, linalg::kron(ComplexMatrix::identity(int_pow(m, j)), inv_pencil(s)));
  }
  acc = linalg::multiply(
      acc, linalg::kron(ComplexMatrix::identity(int_pow(m, k - 1)), sys.input_map(freqs[0])));

  TransferValue out;
  out.level = static_cast<int>(k);
  out.matrix = std::move(acc);
  return out;
}

} // namespace reference

} // namespace strbil
