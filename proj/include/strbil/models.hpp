// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <string>

#include "strbil/simulation.hpp"
#include "strbil/structured_system.hpp"

namespace strbil::models {

/// Physical parameters of the mass-spring-damper chain; all must be positive.
struct MsdParams {
  double mass = 1.0;
  double spring = 2.0;
  double damper = 1.0;
  double ground_spring = 2.0;
  double ground_damper = 1.0;
};

/// Chain of n masses coupled by springs and dampers, each mass also tied to
/// ground, as a second-order bilinear system:
///   M = mass * I, K = spring * tridiag(-1, 2, -1) + ground_spring * I,
///   D = damper * tridiag(-1, 2, -1) + ground_damper * I.
/// The bilinear terms scale the stiffness matrix through diagonal weights:
/// SISO uses Np = -S K S with S = diag(linspace(0.2, 0, n)), force on the
/// first mass (Bu = e1) and displacement of the second mass (Cp = e2^T).
/// The two-input variant (mimo = true) uses Bu = [e1, -e_n],
/// Cp = [e2, e5]^T, Np_1 = -S1 K S1 and Np_2 = +S2 K S2 with
/// S2 = diag(linspace(0, 0.2, n)). Nv and Cv are zero. Requires n >= 5
/// (the second output taps the fifth mass); InvalidSizeError otherwise.
StructuredBilinearSystem make_msd(std::size_t n, bool mimo, const MsdParams& params = {});

/// Parameters of the heated-rod model; delay must be positive.
struct HeatedRodParams {
  double delay = 1.0;
  /// The reaction coefficient shape reused as the bilinear weight:
  /// N = bilinear_scale * diag(sin zeta_i). Set to 0 for the purely linear
  /// delay system.
  double bilinear_scale = 1.0;
};

/// Heated rod on (0, pi) with distributed control and a delayed feedback
/// term, discretized by central finite differences on n interior nodes
/// zeta_i = i * h, h = pi / (n + 1):
///   E = I, A = (1/h^2) tridiag(1, -2, 1) - 2 diag(sin zeta_i),
///   Ad = 2 diag(sin zeta_i), tau = delay, B = ones(n, 1),
///   C = (1/n) ones(1, n), N = bilinear_scale * diag(sin zeta_i).
/// Requires n >= 3; InvalidSizeError otherwise.
StructuredBilinearSystem make_heated_rod(std::size_t n, const HeatedRodParams& params = {});

/// Named excitation signals used by the bundled experiments:
///   "msd_siso": u(t) = sin(200 t) + 200
///   "msd_mimo": u(t) = [sin(200 t) + 200, -cos(200 t) - 200]
///   "rod":      u(t) = cos(10 t) / 20 + cos(5 t) / 20
/// Any other name raises UnknownNameError.
InputSignal standard_input(const std::string& name);

} // namespace strbil::models
