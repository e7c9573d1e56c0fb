// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "strbil/linalg.hpp"

namespace strbil {

namespace {

/// Real-arithmetic coefficients of E x' = A x + sum u_j N_j x + Ad x(t-tau) + B u.
struct RealFirstOrder {
  RealMatrix E, A;
  std::vector<RealMatrix> N;
  RealMatrix B, C;
  RealMatrix Ad; // empty when no delay term
  double tau = 0.0;
};

RealFirstOrder realize_for_integration(const StructuredBilinearSystem& sys) {
  if (!sys.is_real())
    throw InvalidSizeError(
        "simulate: time integration needs a real system; reduce with realify first");
  RealFirstOrder rf;
  switch (sys.system_template()) {
    case SystemTemplate::FirstOrder: {
      const auto& f = sys.first_order();
      rf.E = real_part(f.E);
      rf.A = real_part(f.A);
      for (const auto& Nj : f.N) rf.N.push_back(real_part(Nj));
      rf.B = real_part(f.B);
      rf.C = real_part(f.C);
      return rf;
    }
    case SystemTemplate::SecondOrder: {
      // Position/velocity companion form; outputs y = Cp x + Cv x'.
      const StructuredBilinearSystem comp = companion_first_order(sys);
      return realize_for_integration(comp);
    }
    case SystemTemplate::TimeDelay: {
      const auto& f = sys.time_delay();
      rf.E = real_part(f.E);
      rf.A = real_part(f.A);
      for (const auto& Nj : f.N) rf.N.push_back(real_part(Nj));
      rf.B = real_part(f.B);
      rf.C = real_part(f.C);
      rf.Ad = real_part(f.Ad);
      rf.tau = f.tau;
      return rf;
    }
    case SystemTemplate::Generic:
      throw InvalidSizeError("simulate: generic systems carry no time-domain template");
  }
  throw InvalidSizeError("simulate: unknown template");
}

std::vector<double> eval_input(const InputSignal& u, double t, std::size_t m) {
  std::vector<double> v = u.evaluator(t);
  if (v.size() != m)
    throw InvalidSizeError("simulate: input signal returned wrong vector length");
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidSizeError("simulate: input signal returned non-finite value");
  return v;
}

} // namespace

Trajectory simulate(const StructuredBilinearSystem& sys, const InputSignal& u, double t_f,
                    double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidSizeError("simulate: dt must be positive");
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw InvalidSizeError("simulate: t_f must be positive");
  if (!u.evaluator) throw InvalidSizeError("simulate: input signal has no evaluator");

  const RealFirstOrder rf = realize_for_integration(sys);
  const std::size_t n = rf.E.rows();
  const std::size_t m = rf.B.cols();
  const std::size_t p = rf.C.rows();
  const std::size_t nsteps = static_cast<std::size_t>(std::llround(t_f / dt));
  if (nsteps < 1) throw InvalidSizeError("simulate: t_f shorter than one step");

  std::size_t lag = 0;
  const bool delayed = !rf.Ad.empty() && linalg::max_abs(rf.Ad) != 0.0;
  if (delayed) {
    const double ratio = rf.tau / dt;
    lag = static_cast<std::size_t>(std::llround(ratio));
    if (lag < 1 || std::abs(static_cast<double>(lag) * dt - rf.tau) > 1e-9 * std::max(rf.tau, dt))
      throw NonIntegerDelayRatioError("simulate: tau/dt must be a positive integer (tau = " +
                                      std::to_string(rf.tau) + ", dt = " + std::to_string(dt) +
                                      ")");
  }

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(nsteps + 1);
  traj.outputs.reserve(nsteps + 1);

  std::vector<double> x(n, 0.0); // pinned zero initial condition
  // History ring buffer for the lag term; prehistory on [-tau, 0] is zero.
  std::vector<std::vector<double>> history;
  std::size_t ring_pos = 0;
  if (delayed) history.assign(lag + 1, std::vector<double>(n, 0.0));

  const auto emit_output = [&](double t) {
    std::vector<double> y(p, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = x[j];
      if (xj == 0.0) continue;
      for (std::size_t i = 0; i < p; ++i) y[i] += rf.C(i, j) * xj;
    }
    traj.times.push_back(t);
    traj.outputs.push_back(std::move(y));
  };
  emit_output(0.0);

  RealMatrix lhs(n, n);
  std::vector<double> rhs(n);
  for (std::size_t step = 0; step < nsteps; ++step) {
    const double t_mid = (static_cast<double>(step) + 0.5) * dt;
    const std::vector<double> umid = eval_input(u, t_mid, m);

    // A_eff = A + sum_j umid_j N_j; assemble lhs = E - dt/2 A_eff and
    // rhs = (E + dt/2 A_eff) x + dt B umid (+ dt Ad x(t_mid - tau)).
    const double h2 = 0.5 * dt;
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      double* lc = lhs.col_data(c);
      const double* ec = rf.E.col_data(c);
      const double* ac = rf.A.col_data(c);
      for (std::size_t r = 0; r < n; ++r) lc[r] = ac[r];
      for (std::size_t j = 0; j < m; ++j) {
        const double uj = umid[j];
        if (uj == 0.0) continue;
        const double* nc = rf.N[j].col_data(c);
        for (std::size_t r = 0; r < n; ++r) lc[r] += uj * nc[r];
      }
      // lhs column currently holds A_eff(:, c); fold into rhs, then finish lhs.
      const double xc = x[c];
      if (xc != 0.0)
        for (std::size_t r = 0; r < n; ++r) rhs[r] += (ec[r] + h2 * lc[r]) * xc;
      for (std::size_t r = 0; r < n; ++r) lc[r] = ec[r] - h2 * lc[r];
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double uj = umid[j];
      if (uj == 0.0) continue;
      const double* bj = rf.B.col_data(j);
      for (std::size_t r = 0; r < n; ++r) rhs[r] += dt * bj[r] * uj;
    }
    if (delayed) {
      // Midpoint of the delayed argument lies between the two stored samples.
      const std::vector<double>& older = history[(ring_pos + 1) % (lag + 1)];
      const std::vector<double>& newer = history[(ring_pos + 2) % (lag + 1)];
      for (std::size_t c = 0; c < n; ++c) {
        const double xd = 0.5 * (older[c] + newer[c]);
        if (xd == 0.0) continue;
        const double* adc = rf.Ad.col_data(c);
        for (std::size_t r = 0; r < n; ++r) rhs[r] += dt * adc[r] * xd;
      }
    }

    try {
      RealMatrix b(n, 1);
      for (std::size_t r = 0; r < n; ++r) b(r, 0) = rhs[r];
      const RealMatrix xnew = linalg::LuFactorization<double>(lhs).solve(b);
      for (std::size_t r = 0; r < n; ++r) x[r] = xnew(r, 0);
    } catch (const SingularMatrixError&) {
      throw StepFailureError("simulate: singular step matrix at t = " +
                             std::to_string(static_cast<double>(step) * dt));
    }
    for (double v : x)
      if (!std::isfinite(v))
        throw StepFailureError("simulate: state diverged at t = " +
                               std::to_string((static_cast<double>(step) + 1.0) * dt));

    if (delayed) {
      ring_pos = (ring_pos + 1) % (lag + 1);
      history[ring_pos] = x;
    }
    emit_output((static_cast<double>(step) + 1.0) * dt);
  }
  return traj;
}

ErrorSeries output_error(const Trajectory& fom_traj, const Trajectory& rom_traj) {
  if (fom_traj.times.size() != rom_traj.times.size() || fom_traj.times != rom_traj.times)
    throw GridMismatchError("output_error: trajectories use different time grids");
  ErrorSeries series;
  const std::size_t nt = fom_traj.times.size();
  series.times = fom_traj.times;
  series.values.resize(nt, 0.0);
  series.skipped.resize(nt, 0);
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& y = fom_traj.outputs[i];
    const auto& yr = rom_traj.outputs[i];
    if (y.size() != yr.size())
      throw GridMismatchError("output_error: trajectories have different output dimensions");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      num += (y[j] - yr[j]) * (y[j] - yr[j]);
      den += y[j] * y[j];
    }
    if (den == 0.0) {
      series.skipped[i] = 1;
      series.values[i] = std::numeric_limits<double>::quiet_NaN();
    } else {
      series.values[i] = std::sqrt(num / den);
    }
  }
  return series;
}

namespace {

std::vector<double> active_values(const ErrorSeries& series) {
  std::vector<double> v;
  v.reserve(series.values.size());
  for (std::size_t i = 0; i < series.values.size(); ++i)
    if (!series.skipped[i]) v.push_back(series.values[i]);
  return v;
}

} // namespace

double max_error(const ErrorSeries& series) {
  const std::vector<double> v = active_values(series);
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double median_error(const ErrorSeries& series) {
  std::vector<double> v = active_values(series);
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return (v.size() % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t p = traj.outputs.empty() ? 0 : traj.outputs.front().size();
  out << "t";
  for (std::size_t j = 1; j <= p; ++j) out << ",y" << j;
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
    out << buf;
    for (double y : traj.outputs[i]) {
      std::snprintf(buf, sizeof buf, ",%.17g", y);
      out << buf;
    }
    out << "\n";
  }
}

void write_csv(const ErrorSeries& series, std::ostream& out) {
  out << "t,relerr\n";
  char buf[128];
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", series.times[i], series.values[i]);
    out << buf;
  }
}

} // namespace strbil
