// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/models.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "strbil/errors.hpp"

namespace strbil::models {

namespace {

/// Endpoint-inclusive uniform grid from a to b with n samples (n >= 2).
std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + step * static_cast<double>(i);
  v[n - 1] = b;
  return v;
}

/// diag * tridiag(lower, center, upper) pattern helpers on real data stored
/// in complex matrices.
ComplexMatrix tridiagonal(std::size_t n, double lower, double center, double upper) {
  ComplexMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = center;
    if (i + 1 < n) {
      t(i + 1, i) = lower;
      t(i, i + 1) = upper;
    }
  }
  return t;
}

ComplexMatrix diagonal(const std::vector<double>& entries) {
  ComplexMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

/// Congruence sign * S K S for diagonal S; preserves the symmetry of K.
ComplexMatrix scaled_stiffness(const ComplexMatrix& K, const std::vector<double>& s,
                               double sign) {
  const std::size_t n = s.size();
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = sign * s[i] * K(i, j) * s[j];
  return out;
}

} // namespace

StructuredBilinearSystem make_msd(std::size_t n, bool mimo, const MsdParams& params) {
  if (n < 5)
    throw InvalidSizeError("make_msd: need n >= 5 (outputs tap the second and fifth masses)");
  const bool params_ok = params.mass > 0.0 && params.spring > 0.0 && params.damper > 0.0 &&
                         params.ground_spring > 0.0 && params.ground_damper > 0.0;
  if (!params_ok) throw InvalidSizeError("make_msd: all physical parameters must be positive");

  SecondOrderForm f;
  f.M = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) f.M(i, i) = params.mass;
  f.K = tridiagonal(n, -params.spring, 2.0 * params.spring, -params.spring);
  for (std::size_t i = 0; i < n; ++i) f.K(i, i) += params.ground_spring;
  f.D = tridiagonal(n, -params.damper, 2.0 * params.damper, -params.damper);
  for (std::size_t i = 0; i < n; ++i) f.D(i, i) += params.ground_damper;

  const std::size_t m = mimo ? 2 : 1;
  const std::size_t p = mimo ? 2 : 1;
  f.Np.push_back(scaled_stiffness(f.K, linspace(0.2, 0.0, n), -1.0));
  if (mimo) f.Np.push_back(scaled_stiffness(f.K, linspace(0.0, 0.2, n), +1.0));
  f.Nv.assign(m, ComplexMatrix(n, n));

  f.Bu = ComplexMatrix(n, m);
  f.Bu(0, 0) = 1.0;
  if (mimo) f.Bu(n - 1, 1) = -1.0;
  f.Cp = ComplexMatrix(p, n);
  f.Cp(0, 1) = 1.0;
  if (mimo) f.Cp(1, 4) = 1.0;
  f.Cv = ComplexMatrix(p, n);

  return StructuredBilinearSystem(std::move(f));
}

StructuredBilinearSystem make_heated_rod(std::size_t n, const HeatedRodParams& params) {
  if (n < 3) throw InvalidSizeError("make_heated_rod: need n >= 3 interior nodes");
  if (!(params.delay > 0.0) || !std::isfinite(params.delay))
    throw InvalidSizeError("make_heated_rod: delay must be positive and finite");
  if (!std::isfinite(params.bilinear_scale))
    throw InvalidSizeError("make_heated_rod: bilinear_scale must be finite");

  const double pi = std::acos(-1.0);
  const double h = pi / static_cast<double>(n + 1);
  std::vector<double> reaction(n); // sin(zeta_i) at the interior nodes
  for (std::size_t i = 0; i < n; ++i) reaction[i] = std::sin(static_cast<double>(i + 1) * h);

  TimeDelayForm f;
  f.E = ComplexMatrix::identity(n);
  const double inv_h2 = 1.0 / (h * h);
  f.A = tridiagonal(n, inv_h2, -2.0 * inv_h2, inv_h2);
  for (std::size_t i = 0; i < n; ++i) f.A(i, i) -= 2.0 * reaction[i];
  f.Ad = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) f.Ad(i, i) = 2.0 * reaction[i];
  f.tau = params.delay;

  std::vector<double> weighted(reaction);
  for (double& w : weighted) w *= params.bilinear_scale;
  f.N.push_back(diagonal(weighted));

  f.B = ComplexMatrix(n, 1);
  for (std::size_t i = 0; i < n; ++i) f.B(i, 0) = 1.0;
  f.C = ComplexMatrix(1, n);
  for (std::size_t i = 0; i < n; ++i) f.C(0, i) = 1.0 / static_cast<double>(n);

  return StructuredBilinearSystem(std::move(f));
}

InputSignal standard_input(const std::string& name) {
  InputSignal sig;
  if (name == "msd_siso") {
    sig.evaluator = [](double t) { return std::vector<double>{std::sin(200.0 * t) + 200.0}; };
    sig.description = "u(t) = sin(200 t) + 200";
  } else if (name == "msd_mimo") {
    sig.evaluator = [](double t) {
      return std::vector<double>{std::sin(200.0 * t) + 200.0, -std::cos(200.0 * t) - 200.0};
    };
    sig.description = "u(t) = [sin(200 t) + 200, -cos(200 t) - 200]";
  } else if (name == "rod") {
    sig.evaluator = [](double t) {
      return std::vector<double>{std::cos(10.0 * t) / 20.0 + std::cos(5.0 * t) / 20.0};
    };
    sig.description = "u(t) = cos(10 t) / 20 + cos(5 t) / 20";
  } else {
    throw UnknownNameError("standard_input: unknown signal \"" + name +
                           "\" (expected msd_siso, msd_mimo, or rod)");
  }
  return sig;
}

} // namespace strbil::models
