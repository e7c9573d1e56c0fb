// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "strbil/matrix.hpp"

namespace strbil {

/// First-order template: pencil K(s) = s E - A; C, N_j, B constant in s.
struct FirstOrderForm {
  ComplexMatrix E, A;
  std::vector<ComplexMatrix> N; // one n x n block per input
  ComplexMatrix B, C;
};

/// Second-order template: K(s) = s^2 M + s D + K, C(s) = Cp + s Cv,
/// N_j(s) = Np_j + s Nv_j, B(s) = Bu.
struct SecondOrderForm {
  ComplexMatrix M, D, K;
  std::vector<ComplexMatrix> Np, Nv;
  ComplexMatrix Bu, Cp, Cv;
};

/// Time-delay template: K(s) = s E - A - e^{-s tau} Ad; C, N_j, B constant.
struct TimeDelayForm {
  ComplexMatrix E, A, Ad;
  double tau = 0.0;
  std::vector<ComplexMatrix> N;
  ComplexMatrix B, C;
};

/// Escape hatch for structures without a closed-form template: the caller
/// supplies evaluators for the four matrix functions and their s-derivatives
/// up to max_derivative_order; higher orders raise UnsupportedDerivativeError.
struct GenericForm {
  std::size_t n = 0, m = 0, p = 0;
  int max_derivative_order = 0;
  /// Set when the functions represent a real system, i.e. conj(F(conj(s)))
  /// equals F(s) for every role; gates realification and real-arithmetic
  /// simulation, which cannot be inferred from closures.
  bool real_coefficients = false;
  std::function<ComplexMatrix(Complex, int)> output_c;                // p x n
  std::function<ComplexMatrix(Complex, int)> stiff_k;                 // n x n
  std::function<ComplexMatrix(std::size_t, Complex, int)> bilin_n;    // j is 1-based
  std::function<ComplexMatrix(Complex, int)> input_b;                 // n x m
};

enum class SystemTemplate { FirstOrder, SecondOrder, TimeDelay, Generic };

/// Selector over the quadruple (C, K, N_j, B).
struct MatrixFunctionRole {
  enum class Kind { OutputC, StiffK, BilinN, InputB };
  Kind kind = Kind::StiffK;
  std::size_t j = 0; // 1-based input index, meaningful for BilinN only

  static MatrixFunctionRole output_c() { return {Kind::OutputC, 0}; }
  static MatrixFunctionRole stiff_k() { return {Kind::StiffK, 0}; }
  static MatrixFunctionRole bilin_n(std::size_t j) { return {Kind::BilinN, j}; }
  static MatrixFunctionRole input_b() { return {Kind::InputB, 0}; }
};

enum class AggregateLayout {
  RowConcat, // [N_1(s) ... N_m(s)], n x (m n)
  ColStack   // [N_1(s); ...; N_m(s)], (m n) x n
};

/// A bilinear control system described by four evaluable matrix functions
/// C(s), K(s), N_j(s), B(s). Instances are immutable after construction and
/// all evaluators are pure, so concurrent reads are safe.
class StructuredBilinearSystem {
public:
  explicit StructuredBilinearSystem(FirstOrderForm form);
  explicit StructuredBilinearSystem(SecondOrderForm form);
  explicit StructuredBilinearSystem(TimeDelayForm form);
  explicit StructuredBilinearSystem(GenericForm form);

  SystemTemplate system_template() const noexcept { return template_; }
  std::size_t state_dim() const noexcept { return n_; }
  std::size_t num_inputs() const noexcept { return m_; }
  std::size_t num_outputs() const noexcept { return p_; }

  /// True when every stored matrix is real (Generic: the declared flag); a
  /// real system satisfies G(conj(s)) = conj(G(s)), which realification and
  /// the real-arithmetic integrator rely on.
  bool is_real() const noexcept { return real_; }

  bool holds(SystemTemplate t) const noexcept { return template_ == t; }
  const FirstOrderForm& first_order() const;
  const SecondOrderForm& second_order() const;
  const TimeDelayForm& time_delay() const;
  const GenericForm& generic() const;

  /// order-th s-derivative of the selected matrix function at s.
  ComplexMatrix eval(MatrixFunctionRole role, Complex s, int order) const;

  ComplexMatrix output_map(Complex s, int order = 0) const {
    return eval(MatrixFunctionRole::output_c(), s, order);
  }
  ComplexMatrix system_pencil(Complex s, int order = 0) const {
    return eval(MatrixFunctionRole::stiff_k(), s, order);
  }
  ComplexMatrix bilinear_map(std::size_t j, Complex s, int order = 0) const {
    return eval(MatrixFunctionRole::bilin_n(j), s, order);
  }
  ComplexMatrix input_map(Complex s, int order = 0) const {
    return eval(MatrixFunctionRole::input_b(), s, order);
  }

private:
  SystemTemplate template_;
  std::size_t n_ = 0, m_ = 0, p_ = 0;
  bool real_ = false;
  std::variant<FirstOrderForm, SecondOrderForm, TimeDelayForm, GenericForm> payload_;
};

/// order-th s-derivative of the matrix function selected by role.
ComplexMatrix eval_matrix_function(const StructuredBilinearSystem& sys, MatrixFunctionRole role,
                                   Complex s, int order);

/// Concatenation of all bilinear blocks N_1(s)..N_m(s) in the given layout,
/// with the derivative applied entrywise per block.
ComplexMatrix eval_N_aggregate(const StructuredBilinearSystem& sys, Complex s,
                               AggregateLayout layout, int order);

/// Rewrite a second-order system as an equivalent first-order one of state
/// dimension 2n (same m, p):
///   E = blkdiag(I, M), A = [[0, I], [-K, -D]], N_j = [[0, 0], [Np_j, Nv_j]],
///   B = [0; Bu], C = [Cp, Cv].
StructuredBilinearSystem companion_first_order(const StructuredBilinearSystem& sys);

} // namespace strbil
