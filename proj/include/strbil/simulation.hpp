// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "strbil/structured_system.hpp"

namespace strbil {

/// Time-domain input: t (seconds) -> real vector of length m.
struct InputSignal {
  std::function<std::vector<double>(double)> evaluator;
  std::string description;
};

/// Output samples on the uniform grid t_i = i * dt.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> outputs; // one p-vector per time
};

/// Integrate E x' = A x + sum_j u_j N_j x + B u from x(0) = 0 with the
/// implicit-midpoint rule, linearly implicit in the state and with the
/// bilinear coefficient frozen at u(t_mid) (one factorization and solve per
/// step). Second-order systems integrate their first-order companion form
/// (dimension 2n); time-delay systems keep a state history ring buffer and
/// treat the lag term explicitly at the midpoint, requiring tau/dt to be a
/// positive integer (NonIntegerDelayRatioError) with zero prehistory. The
/// system must be real-valued (realify complex reduced models first); t_f is
/// rounded to the nearest multiple of dt. Throws StepFailureError naming the
/// time reached when a step matrix is singular or the state leaves the
/// representable range.
Trajectory simulate(const StructuredBilinearSystem& sys, const InputSignal& u, double t_f,
                    double dt);

/// Per-sample relative output error with skip flags where ||y|| = 0.
struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<char> skipped;
};

/// ||y(t) - y_hat(t)||_2 / ||y(t)||_2 per sample; zero-denominator samples
/// are flagged and excluded from the summary statistics. Trajectories must
/// share the exact time grid and output dimension (GridMismatchError).
ErrorSeries output_error(const Trajectory& fom_traj, const Trajectory& rom_traj);

/// Largest / median non-skipped error value (0 when everything is skipped).
double max_error(const ErrorSeries& series);
double median_error(const ErrorSeries& series);

/// CSV export: `t,y1..yp` / `t,relerr`, 17 significant digits per value.
void write_csv(const Trajectory& traj, std::ostream& out);
void write_csv(const ErrorSeries& series, std::ostream& out);

} // namespace strbil
