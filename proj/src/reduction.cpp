// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/reduction.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "strbil/linalg.hpp"

namespace strbil {

namespace {

// Fixed off-axis probe point for reduced-pencil regularity checks (arbitrary
// but deterministic; unlikely to coincide with user interpolation points).
const Complex kProbePoint{0.29386561, 1.73205081};

void require_full_rank(const ComplexMatrix& M, std::size_t n, const char* name) {
  if (M.rows() != n || M.cols() == 0 || M.cols() > n)
    throw RankDeficientBasisError(std::string(name) +
                                  ": basis must be n x r with 1 <= r <= n");
  try {
    if (linalg::orthonormalize_columns(M).cols() != M.cols())
      throw RankDeficientBasisError(std::string(name) + ": columns are numerically dependent");
  } catch (const EmptyBasisError&) {
    throw RankDeficientBasisError(std::string(name) + ": basis is numerically zero");
  }
}

} // namespace

StructuredBilinearSystem petrov_galerkin_project(const StructuredBilinearSystem& sys,
                                                 const ComplexMatrix& V, const ComplexMatrix& W) {
  const std::size_t n = sys.state_dim();
  if (V.cols() != W.cols())
    throw RankDeficientBasisError("petrov_galerkin_project: V and W need equal column counts");
  require_full_rank(V, n, "petrov_galerkin_project: V");
  require_full_rank(W, n, "petrov_galerkin_project: W");

  const auto proj = [&](const ComplexMatrix& X) {
    return linalg::multiply_adjoint_left(W, linalg::multiply(X, V));
  };
  const auto proj_left = [&](const ComplexMatrix& X) {  // W^H X
    return linalg::multiply_adjoint_left(W, X);
  };
  const auto proj_right = [&](const ComplexMatrix& X) { // X V
    return linalg::multiply(X, V);
  };
  const auto proj_all = [&](const std::vector<ComplexMatrix>& Ns) {
    std::vector<ComplexMatrix> out;
    out.reserve(Ns.size());
    for (const auto& Nj : Ns) out.push_back(proj(Nj));
    return out;
  };

  switch (sys.system_template()) {
    case SystemTemplate::FirstOrder: {
      const auto& f = sys.first_order();
      return StructuredBilinearSystem(
          FirstOrderForm{proj(f.E), proj(f.A), proj_all(f.N), proj_left(f.B), proj_right(f.C)});
    }
    case SystemTemplate::SecondOrder: {
      const auto& f = sys.second_order();
      return StructuredBilinearSystem(SecondOrderForm{proj(f.M), proj(f.D), proj(f.K),
                                                      proj_all(f.Np), proj_all(f.Nv),
                                                      proj_left(f.Bu), proj_right(f.Cp),
                                                      proj_right(f.Cv)});
    }
    case SystemTemplate::TimeDelay: {
      const auto& f = sys.time_delay();
      return StructuredBilinearSystem(TimeDelayForm{proj(f.E), proj(f.A), proj(f.Ad), f.tau,
                                                    proj_all(f.N), proj_left(f.B),
                                                    proj_right(f.C)});
    }
    case SystemTemplate::Generic: {
      const GenericForm f = sys.generic(); // copy: the wrappers must own the parent evaluators
      GenericForm red;
      red.n = V.cols();
      red.m = f.m;
      red.p = f.p;
      red.max_derivative_order = f.max_derivative_order;
      red.real_coefficients = f.real_coefficients && is_real(V) && is_real(W);
      red.output_c = [f, V](Complex s, int o) { return linalg::multiply(f.output_c(s, o), V); };
      red.stiff_k = [f, V, W](Complex s, int o) {
        return linalg::multiply_adjoint_left(W, linalg::multiply(f.stiff_k(s, o), V));
      };
      red.bilin_n = [f, V, W](std::size_t j, Complex s, int o) {
        return linalg::multiply_adjoint_left(W, linalg::multiply(f.bilin_n(j, s, o), V));
      };
      red.input_b = [f, W](Complex s, int o) {
        return linalg::multiply_adjoint_left(W, f.input_b(s, o));
      };
      return StructuredBilinearSystem(std::move(red));
    }
  }
  throw InvalidSizeError("petrov_galerkin_project: unknown template");
}

std::vector<std::string> probe_reduced_pencil(const StructuredBilinearSystem& reduced,
                                              const std::vector<Complex>& probe_points) {
  std::vector<std::string> warnings;
  for (Complex s : probe_points) {
    try {
      linalg::LuFactorization<Complex> lu(reduced.system_pencil(s));
    } catch (const SingularMatrixError&) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "reduced pencil singular at probe point s = %.9g%+.9gi", s.real(), s.imag());
      warnings.emplace_back(buf);
    }
  }
  return warnings;
}

ComplexMatrix random_orthonormal(std::size_t n, std::size_t r, bool real_entries,
                                 std::uint64_t seed) {
  if (r == 0 || r > n)
    throw InvalidSizeError("random_orthonormal: need 1 <= r <= n");
  // splitmix64: tiny, stateless, and identical on every platform (the C++
  // random library's distributions are implementation-defined, which would
  // break byte-reproducible outputs).
  std::uint64_t state = seed;
  const auto next_u64 = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  const auto next_unit = [&]() { return (next_u64() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };

  for (int attempt = 0; attempt < 16; ++attempt) {
    const std::size_t cols = r + attempt; // extra columns insure against drops
    ComplexMatrix M(n, std::min(cols, n));
    for (std::size_t j = 0; j < M.cols(); ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const double re = next_unit();
        const double im = real_entries ? 0.0 : next_unit();
        M(i, j) = Complex(re, im);
      }
    const ComplexMatrix Q = linalg::orthonormalize_columns(M);
    if (Q.cols() >= r) return Q.block(0, 0, n, r);
  }
  throw RankDeficientBasisError("random_orthonormal: could not draw a full-rank matrix");
}

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = 0x51ab5e42d2c3fd21ULL;
  for (std::uint64_t v : {a, b, c}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h;
}

/// Append deterministic random columns until the basis has exactly r columns
/// (keeps the existing span; used to equalize two-sided basis ranks).
ComplexMatrix pad_basis(const ComplexMatrix& Q, std::size_t r, bool real_entries,
                        std::uint64_t seed) {
  if (Q.cols() == r) return Q;
  for (int attempt = 0; attempt < 16; ++attempt) {
    const std::size_t extra = r - Q.cols() + attempt;
    const ComplexMatrix R =
        random_orthonormal(Q.rows(), std::min(Q.rows(), Q.cols() + extra), real_entries,
                           seed + static_cast<std::uint64_t>(attempt));
    const ComplexMatrix padded = linalg::orthonormalize_columns(hcat(Q, R));
    if (padded.cols() >= r) return padded.block(0, 0, Q.rows(), r);
  }
  throw RankDeficientBasisError("reduce: could not pad basis to the requested rank");
}

std::vector<Complex> collect_spec_points(const InterpolationSpec& spec) {
  std::vector<Complex> pts;
  for (const auto& t : spec.v_tuples) pts.insert(pts.end(), t.points.begin(), t.points.end());
  for (const auto& t : spec.w_tuples) pts.insert(pts.end(), t.points.begin(), t.points.end());
  pts.push_back(kProbePoint);
  return pts;
}

} // namespace

ReducedModel reduce(const StructuredBilinearSystem& sys, const InterpolationSpec& spec) {
  validate(spec);
  if (spec.realify && !sys.is_real())
    throw RealifyImpossibleError("reduce: realification requires a real system");
  const std::size_t n = sys.state_dim();

  ComplexMatrix V, W;
  switch (spec.side) {
    case ProjectionSide::VOnly: {
      V = assemble_basis(build_V_blocks(sys, spec.v_tuples), spec.realify, spec.tol);
      const bool real_mate = sys.is_real() && is_real(V);
      W = random_orthonormal(n, V.cols(), real_mate, mix_seed(n, V.cols(), 0x57u));
      break;
    }
    case ProjectionSide::WOnly: {
      W = assemble_basis(build_W_blocks(sys, spec.w_tuples), spec.realify, spec.tol);
      const bool real_mate = sys.is_real() && is_real(W);
      V = random_orthonormal(n, W.cols(), real_mate, mix_seed(n, W.cols(), 0x56u));
      break;
    }
    case ProjectionSide::TwoSided: {
      V = assemble_basis(build_V_blocks(sys, spec.v_tuples), spec.realify, spec.tol);
      W = assemble_basis(build_W_blocks(sys, spec.w_tuples), spec.realify, spec.tol);
      const std::size_t r = std::max(V.cols(), W.cols());
      const bool real_pad = sys.is_real() && is_real(V) && is_real(W);
      V = pad_basis(V, r, real_pad, mix_seed(n, r, 0x7600u));
      W = pad_basis(W, r, real_pad, mix_seed(n, r, 0x7601u));
      break;
    }
    case ProjectionSide::OneSidedWEqualsV: {
      V = assemble_basis(build_V_blocks(sys, spec.v_tuples), spec.realify, spec.tol);
      W = V;
      break;
    }
  }

  ReducedModel out{petrov_galerkin_project(sys, V, W), std::move(V), std::move(W), spec,
                   {}};
  out.warnings = probe_reduced_pencil(out.system, collect_spec_points(spec));
  return out;
}

} // namespace strbil
