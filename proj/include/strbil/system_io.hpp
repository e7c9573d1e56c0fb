// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <string>

#include "strbil/interpolation.hpp"
#include "strbil/reduction.hpp"
#include "strbil/structured_system.hpp"

namespace strbil::io {

/// JSON text for a closed-form system: fields {"template": "first_order" |
/// "second_order" | "time_delay", "n", "m", "p", "matrices": {...}} plus
/// "tau" for the time-delay template. The matrices object holds nested row
/// arrays named exactly E, A, Ad, M, D, K, Np, Nv, N (the bilinear families
/// are lists of m matrices), B, Bu, C, Cp, Cv as the template requires. An
/// entry serializes as a plain double when its imaginary part is bit-zero
/// and as [re, im] otherwise, so finite values round-trip bit-identically.
/// Generic-template systems hold closures and raise IoError.
std::string to_json(const StructuredBilinearSystem& sys);
StructuredBilinearSystem system_from_json(const std::string& text);

/// Reduced models use the system schema (describing the reduced system) plus
/// "V", "W" (the n x r bases as nested row arrays) and "spec" (the
/// interpolation spec object below). Warnings are transient and not stored.
std::string to_json(const ReducedModel& rom);
ReducedModel reduced_model_from_json(const std::string& text);

/// Interpolation specs: {"v_points": [[re, im], ...], "v_orders": [...],
/// "w_points": ..., "w_orders": ..., "side": "v" | "w" | "two" | "w=v",
/// "realify": bool, "tol": double}. A side holding more than one point tuple
/// is written (and always accepted) in the extended form
/// {"v_tuples": [{"points": ..., "orders": ...}, ...], "w_tuples": ...}
/// instead of the flat point/order keys.
std::string to_json(const InterpolationSpec& spec);
InterpolationSpec spec_from_json(const std::string& text);

/// File wrappers around the converters above. IoError on unreadable or
/// unwritable paths and on malformed content.
void save_system(const StructuredBilinearSystem& sys, const std::string& path);
StructuredBilinearSystem load_system(const std::string& path);
void save_reduced_model(const ReducedModel& rom, const std::string& path);
ReducedModel load_reduced_model(const std::string& path);
void save_spec(const InterpolationSpec& spec, const std::string& path);
InterpolationSpec load_spec(const std::string& path);

} // namespace strbil::io
