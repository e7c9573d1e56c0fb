// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/conditions.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "strbil/errors.hpp"
#include "strbil/linalg.hpp"
#include "strbil/transfer.hpp"

namespace strbil {

namespace {

bool bitwise_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool same_condition(const InterpolationCondition& a, const InterpolationCondition& b) {
  if (a.arguments.size() != b.arguments.size() || a.orders != b.orders) return false;
  for (std::size_t i = 0; i < a.arguments.size(); ++i)
    if (!bitwise_equal(a.arguments[i].real(), b.arguments[i].real()) ||
        !bitwise_equal(a.arguments[i].imag(), b.arguments[i].imag()))
      return false;
  return true;
}

/// Missing orders lists mean plain interpolation (all zero).
std::vector<int> effective_orders(const PointTuple& tuple) {
  if (tuple.orders.empty()) return std::vector<int>(tuple.points.size(), 0);
  return tuple.orders;
}

} // namespace

std::vector<InterpolationCondition> implied_conditions(const InterpolationSpec& spec) {
  validate(spec);
  std::vector<InterpolationCondition> out;
  auto add = [&out](InterpolationCondition c) {
    for (const InterpolationCondition& kept : out)
      if (same_condition(kept, c)) return;
    out.push_back(std::move(c));
  };

  const bool uses_v = spec.side != ProjectionSide::WOnly;
  const bool uses_w = spec.side == ProjectionSide::WOnly || spec.side == ProjectionSide::TwoSided;

  if (uses_v) {
    for (const PointTuple& t : spec.v_tuples) {
      const std::vector<int> ell = effective_orders(t);
      for (std::size_t q = 1; q <= t.points.size(); ++q) {
        for (int j = 0; j <= ell[q - 1]; ++j) {
          InterpolationCondition c;
          c.origin = 'V';
          c.arguments.assign(t.points.begin(), t.points.begin() + static_cast<std::ptrdiff_t>(q));
          c.orders.assign(ell.begin(), ell.begin() + static_cast<std::ptrdiff_t>(q - 1));
          c.orders.push_back(j);
          add(std::move(c));
        }
      }
    }
  }

  if (uses_w) {
    for (const PointTuple& t : spec.w_tuples) {
      const std::vector<int> nu = effective_orders(t);
      const std::size_t theta = t.points.size();
      for (std::size_t eta = 1; eta <= theta; ++eta) {
        const std::size_t first = theta - eta;
        for (int i = 0; i <= nu[first]; ++i) {
          InterpolationCondition c;
          c.origin = 'W';
          c.arguments.assign(t.points.begin() + static_cast<std::ptrdiff_t>(first),
                             t.points.end());
          c.orders.push_back(i);
          c.orders.insert(c.orders.end(), nu.begin() + static_cast<std::ptrdiff_t>(first + 1),
                          nu.end());
          add(std::move(c));
        }
      }
    }
  }

  if (spec.side == ProjectionSide::TwoSided) {
    for (const PointTuple& vt : spec.v_tuples) {
      const std::vector<int> ell = effective_orders(vt);
      for (const PointTuple& wt : spec.w_tuples) {
        const std::vector<int> nu = effective_orders(wt);
        const std::size_t k = vt.points.size();
        const std::size_t theta = wt.points.size();
        for (std::size_t q = 1; q <= k; ++q) {
          for (std::size_t eta = 1; eta <= theta; ++eta) {
            const std::size_t first = theta - eta;
            for (int j = 0; j <= ell[q - 1]; ++j) {
              for (int i = 0; i <= nu[first]; ++i) {
                InterpolationCondition c;
                c.origin = 'M';
                c.arguments.assign(vt.points.begin(),
                                   vt.points.begin() + static_cast<std::ptrdiff_t>(q));
                c.arguments.insert(c.arguments.end(),
                                   wt.points.begin() + static_cast<std::ptrdiff_t>(first),
                                   wt.points.end());
                c.orders.assign(ell.begin(), ell.begin() + static_cast<std::ptrdiff_t>(q - 1));
                c.orders.push_back(j);
                c.orders.push_back(i);
                c.orders.insert(c.orders.end(), nu.begin() + static_cast<std::ptrdiff_t>(first + 1),
                                nu.end());
                add(std::move(c));
              }
            }
          }
        }
      }
    }
  }

  return out;
}

std::vector<ConditionCheck> check_conditions(const StructuredBilinearSystem& fom,
                                             const StructuredBilinearSystem& rom,
                                             const std::vector<InterpolationCondition>& conditions,
                                             double tol) {
  if (fom.num_inputs() != rom.num_inputs() || fom.num_outputs() != rom.num_outputs())
    throw InvalidSizeError("check_conditions: systems must share input and output dimensions");
  if (!(tol > 0.0)) throw InvalidSizeError("check_conditions: tol must be positive");

  std::vector<ConditionCheck> checks;
  checks.reserve(conditions.size());
  for (const InterpolationCondition& cond : conditions) {
    const bool plain =
        std::all_of(cond.orders.begin(), cond.orders.end(), [](int d) { return d == 0; });
    const ComplexMatrix full = plain
                                   ? eval_transfer(fom, cond.arguments).matrix
                                   : eval_transfer_partial(fom, cond.arguments, cond.orders).matrix;
    const ComplexMatrix reduced =
        plain ? eval_transfer(rom, cond.arguments).matrix
              : eval_transfer_partial(rom, cond.arguments, cond.orders).matrix;
    ConditionCheck check;
    check.condition = cond;
    check.relative_error = linalg::relative_spectral_error(reduced, full);
    check.passed = check.relative_error <= tol;
    checks.push_back(std::move(check));
  }
  return checks;
}

std::string describe(const InterpolationCondition& condition) {
  std::string text = "G" + std::to_string(condition.arguments.size()) + "(";
  char buf[64];
  for (std::size_t i = 0; i < condition.arguments.size(); ++i) {
    const Complex s = condition.arguments[i];
    if (s.imag() == 0.0)
      std::snprintf(buf, sizeof(buf), "%g", s.real());
    else
      std::snprintf(buf, sizeof(buf), "%g%+gi", s.real(), s.imag());
    if (i > 0) text += ", ";
    text += buf;
  }
  text += ")";
  const bool plain =
      std::all_of(condition.orders.begin(), condition.orders.end(), [](int d) { return d == 0; });
  if (!plain) {
    text += " orders (";
    for (std::size_t i = 0; i < condition.orders.size(); ++i) {
      if (i > 0) text += ",";
      text += std::to_string(condition.orders[i]);
    }
    text += ")";
  }
  switch (condition.origin) {
  case 'V': text += " [right]"; break;
  case 'W': text += " [left]"; break;
  case 'M': text += " [mixed]"; break;
  default: break;
  }
  return text;
}

} // namespace strbil
