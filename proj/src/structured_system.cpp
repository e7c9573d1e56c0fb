// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/structured_system.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace strbil {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidSizeError(what);
}

void require_square(const ComplexMatrix& M, std::size_t n, const char* name) {
  require(M.rows() == n && M.cols() == n, std::string(name) + ": expected " +
                                              std::to_string(n) + "x" + std::to_string(n));
}

bool all_real(const std::vector<ComplexMatrix>& ms) {
  for (const auto& M : ms)
    if (!is_real(M)) return false;
  return true;
}

ComplexMatrix zeros_like(std::size_t r, std::size_t c) { return ComplexMatrix(r, c); }

} // namespace

StructuredBilinearSystem::StructuredBilinearSystem(FirstOrderForm form)
    : template_(SystemTemplate::FirstOrder), payload_(std::move(form)) {
  const auto& f = std::get<FirstOrderForm>(payload_);
  n_ = f.E.rows();
  m_ = f.B.cols();
  p_ = f.C.rows();
  require(n_ >= 1 && m_ >= 1 && p_ >= 1, "first-order system: n, m, p must be positive");
  require_square(f.E, n_, "E");
  require_square(f.A, n_, "A");
  require(f.N.size() == m_, "first-order system: need one N_j per input");
  for (const auto& Nj : f.N) require_square(Nj, n_, "N_j");
  require(f.B.rows() == n_, "B: row count must equal n");
  require(f.C.cols() == n_, "C: column count must equal n");
  real_ = strbil::is_real(f.E) && strbil::is_real(f.A) && all_real(f.N) &&
          strbil::is_real(f.B) && strbil::is_real(f.C);
}

StructuredBilinearSystem::StructuredBilinearSystem(SecondOrderForm form)
    : template_(SystemTemplate::SecondOrder), payload_(std::move(form)) {
  const auto& f = std::get<SecondOrderForm>(payload_);
  n_ = f.M.rows();
  m_ = f.Bu.cols();
  p_ = f.Cp.rows();
  require(n_ >= 1 && m_ >= 1 && p_ >= 1, "second-order system: n, m, p must be positive");
  require_square(f.M, n_, "M");
  require_square(f.D, n_, "D");
  require_square(f.K, n_, "K");
  require(f.Np.size() == m_ && f.Nv.size() == m_,
          "second-order system: need one Np_j and Nv_j per input");
  for (const auto& Nj : f.Np) require_square(Nj, n_, "Np_j");
  for (const auto& Nj : f.Nv) require_square(Nj, n_, "Nv_j");
  require(f.Bu.rows() == n_, "Bu: row count must equal n");
  require(f.Cp.cols() == n_ && f.Cv.rows() == p_ && f.Cv.cols() == n_,
          "Cp, Cv: expected p x n");
  real_ = strbil::is_real(f.M) && strbil::is_real(f.D) && strbil::is_real(f.K) &&
          all_real(f.Np) && all_real(f.Nv) && strbil::is_real(f.Bu) &&
          strbil::is_real(f.Cp) && strbil::is_real(f.Cv);
}

StructuredBilinearSystem::StructuredBilinearSystem(TimeDelayForm form)
    : template_(SystemTemplate::TimeDelay), payload_(std::move(form)) {
  const auto& f = std::get<TimeDelayForm>(payload_);
  n_ = f.E.rows();
  m_ = f.B.cols();
  p_ = f.C.rows();
  require(n_ >= 1 && m_ >= 1 && p_ >= 1, "time-delay system: n, m, p must be positive");
  require(f.tau >= 0.0 && std::isfinite(f.tau), "tau: must be a finite nonnegative real");
  require_square(f.E, n_, "E");
  require_square(f.A, n_, "A");
  require_square(f.Ad, n_, "Ad");
  require(f.N.size() == m_, "time-delay system: need one N_j per input");
  for (const auto& Nj : f.N) require_square(Nj, n_, "N_j");
  require(f.B.rows() == n_, "B: row count must equal n");
  require(f.C.cols() == n_, "C: column count must equal n");
  real_ = strbil::is_real(f.E) && strbil::is_real(f.A) && strbil::is_real(f.Ad) &&
          all_real(f.N) && strbil::is_real(f.B) && strbil::is_real(f.C);
}

StructuredBilinearSystem::StructuredBilinearSystem(GenericForm form)
    : template_(SystemTemplate::Generic), payload_(std::move(form)) {
  const auto& f = std::get<GenericForm>(payload_);
  n_ = f.n;
  m_ = f.m;
  p_ = f.p;
  require(n_ >= 1 && m_ >= 1 && p_ >= 1, "generic system: n, m, p must be positive");
  require(f.max_derivative_order >= 0, "generic system: declared derivative order must be >= 0");
  require(static_cast<bool>(f.output_c) && static_cast<bool>(f.stiff_k) &&
              static_cast<bool>(f.bilin_n) && static_cast<bool>(f.input_b),
          "generic system: all four evaluators must be set");
  real_ = f.real_coefficients;
}

const FirstOrderForm& StructuredBilinearSystem::first_order() const {
  require(holds(SystemTemplate::FirstOrder), "first_order(): wrong template");
  return std::get<FirstOrderForm>(payload_);
}

const SecondOrderForm& StructuredBilinearSystem::second_order() const {
  require(holds(SystemTemplate::SecondOrder), "second_order(): wrong template");
  return std::get<SecondOrderForm>(payload_);
}

const TimeDelayForm& StructuredBilinearSystem::time_delay() const {
  require(holds(SystemTemplate::TimeDelay), "time_delay(): wrong template");
  return std::get<TimeDelayForm>(payload_);
}

const GenericForm& StructuredBilinearSystem::generic() const {
  require(holds(SystemTemplate::Generic), "generic(): wrong template");
  return std::get<GenericForm>(payload_);
}

namespace {

/// (-tau)^q e^{-s tau}, the scalar factor of the delay term's q-th derivative.
Complex delay_factor(double tau, Complex s, int q) {
  double sign_pow = 1.0;
  for (int i = 0; i < q; ++i) sign_pow *= -tau;
  return sign_pow * std::exp(-s * tau);
}

ComplexMatrix scaled(const ComplexMatrix& M, Complex a) {
  ComplexMatrix out = M;
  out *= a;
  return out;
}

} // namespace

ComplexMatrix StructuredBilinearSystem::eval(MatrixFunctionRole role, Complex s,
                                             int order) const {
  require(order >= 0, "eval: derivative order must be nonnegative");
  if (role.kind == MatrixFunctionRole::Kind::BilinN)
    require(role.j >= 1 && role.j <= m_, "eval: bilinear block index out of range");

  switch (template_) {
    case SystemTemplate::FirstOrder: {
      const auto& f = std::get<FirstOrderForm>(payload_);
      switch (role.kind) {
        case MatrixFunctionRole::Kind::OutputC:
          return order == 0 ? f.C : zeros_like(p_, n_);
        case MatrixFunctionRole::Kind::StiffK:
          if (order == 0) return scaled(f.E, s) - f.A;
          if (order == 1) return f.E;
          return zeros_like(n_, n_);
        case MatrixFunctionRole::Kind::BilinN:
          return order == 0 ? f.N[role.j - 1] : zeros_like(n_, n_);
        case MatrixFunctionRole::Kind::InputB:
          return order == 0 ? f.B : zeros_like(n_, m_);
      }
      break;
    }
    case SystemTemplate::SecondOrder: {
      const auto& f = std::get<SecondOrderForm>(payload_);
      switch (role.kind) {
        case MatrixFunctionRole::Kind::OutputC:
          if (order == 0) return f.Cp + scaled(f.Cv, s);
          if (order == 1) return f.Cv;
          return zeros_like(p_, n_);
        case MatrixFunctionRole::Kind::StiffK:
          if (order == 0) return scaled(f.M, s * s) + scaled(f.D, s) + f.K;
          if (order == 1) return scaled(f.M, 2.0 * s) + f.D;
          if (order == 2) return scaled(f.M, Complex(2.0, 0.0));
          return zeros_like(n_, n_);
        case MatrixFunctionRole::Kind::BilinN:
          if (order == 0) return f.Np[role.j - 1] + scaled(f.Nv[role.j - 1], s);
          if (order == 1) return f.Nv[role.j - 1];
          return zeros_like(n_, n_);
        case MatrixFunctionRole::Kind::InputB:
          return order == 0 ? f.Bu : zeros_like(n_, m_);
      }
      break;
    }
    case SystemTemplate::TimeDelay: {
      const auto& f = std::get<TimeDelayForm>(payload_);
      switch (role.kind) {
        case MatrixFunctionRole::Kind::OutputC:
          return order == 0 ? f.C : zeros_like(p_, n_);
        case MatrixFunctionRole::Kind::StiffK: {
          if (order == 0) return scaled(f.E, s) - f.A - scaled(f.Ad, delay_factor(f.tau, s, 0));
          ComplexMatrix out = scaled(f.Ad, -delay_factor(f.tau, s, order));
          if (order == 1) out += f.E;
          return out;
        }
        case MatrixFunctionRole::Kind::BilinN:
          return order == 0 ? f.N[role.j - 1] : zeros_like(n_, n_);
        case MatrixFunctionRole::Kind::InputB:
          return order == 0 ? f.B : zeros_like(n_, m_);
      }
      break;
    }
    case SystemTemplate::Generic: {
      const auto& f = std::get<GenericForm>(payload_);
      if (order > f.max_derivative_order)
        throw UnsupportedDerivativeError(
            "generic system: derivative order " + std::to_string(order) +
            " exceeds declared maximum " + std::to_string(f.max_derivative_order));
      switch (role.kind) {
        case MatrixFunctionRole::Kind::OutputC:
          return f.output_c(s, order);
        case MatrixFunctionRole::Kind::StiffK:
          return f.stiff_k(s, order);
        case MatrixFunctionRole::Kind::BilinN:
          return f.bilin_n(role.j, s, order);
        case MatrixFunctionRole::Kind::InputB:
          return f.input_b(s, order);
      }
      break;
    }
  }
  throw InvalidSizeError("eval: unreachable role/template combination");
}

ComplexMatrix eval_matrix_function(const StructuredBilinearSystem& sys, MatrixFunctionRole role,
                                   Complex s, int order) {
  return sys.eval(role, s, order);
}

ComplexMatrix eval_N_aggregate(const StructuredBilinearSystem& sys, Complex s,
                               AggregateLayout layout, int order) {
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.num_inputs();
  ComplexMatrix out = (layout == AggregateLayout::RowConcat) ? ComplexMatrix(n, m * n)
                                                             : ComplexMatrix(m * n, n);
  for (std::size_t j = 1; j <= m; ++j) {
    const ComplexMatrix Nj = sys.bilinear_map(j, s, order);
    if (layout == AggregateLayout::RowConcat)
      out.set_block(0, (j - 1) * n, Nj);
    else
      out.set_block((j - 1) * n, 0, Nj);
  }
  return out;
}

StructuredBilinearSystem companion_first_order(const StructuredBilinearSystem& sys) {
  if (!sys.holds(SystemTemplate::SecondOrder))
    throw InvalidSizeError("companion_first_order: second-order template required");
  const auto& f = sys.second_order();
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.num_inputs();
  const std::size_t p = sys.num_outputs();
  const ComplexMatrix I = ComplexMatrix::identity(n);

  FirstOrderForm out;
  out.E = ComplexMatrix(2 * n, 2 * n);
  out.E.set_block(0, 0, I);
  out.E.set_block(n, n, f.M);
  out.A = ComplexMatrix(2 * n, 2 * n);
  out.A.set_block(0, n, I);
  out.A.set_block(n, 0, -1.0 * f.K);
  out.A.set_block(n, n, -1.0 * f.D);
  out.N.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix Nj(2 * n, 2 * n);
    Nj.set_block(n, 0, f.Np[j]);
    Nj.set_block(n, n, f.Nv[j]);
    out.N.push_back(std::move(Nj));
  }
  out.B = ComplexMatrix(2 * n, m);
  out.B.set_block(n, 0, f.Bu);
  out.C = ComplexMatrix(p, 2 * n);
  out.C.set_block(0, 0, f.Cp);
  out.C.set_block(0, n, f.Cv);
  return StructuredBilinearSystem(std::move(out));
}

} // namespace strbil
