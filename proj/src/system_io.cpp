// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include "strbil/system_io.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strbil/errors.hpp"

namespace strbil::io {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw IoError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::size_t parse_dim(const json& doc, const char* name) {
  const json& j = field(doc, name);
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw IoError(std::string("field \"") + name + "\" must be a positive integer");
  return j.get<std::size_t>();
}

double parse_double(const json& j, const char* name) {
  if (!j.is_number()) throw IoError(std::string("field \"") + name + "\" must be a number");
  return j.get<double>();
}

json entry_to_json(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw IoError("to_json: non-finite value cannot be serialized");
  const double im = z.imag();
  if (im == 0.0 && !std::signbit(im)) return json(z.real());
  return json::array({z.real(), im});
}

Complex parse_entry(const json& j, const char* where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw IoError(std::string(where) + ": entry must be a number or a [re, im] pair");
}

json matrix_to_json(const ComplexMatrix& mat) {
  json rows = json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(entry_to_json(mat(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_matrix(const json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw IoError(std::string("matrix \"") + name + "\" must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix mat(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw IoError(std::string("matrix \"") + name + "\" has rows of unequal length");
    for (std::size_t c = 0; c < cols; ++c) mat(i, c) = parse_entry(j[i][c], name);
  }
  return mat;
}

json matrix_list_to_json(const std::vector<ComplexMatrix>& list) {
  json out = json::array();
  for (const ComplexMatrix& mat : list) out.push_back(matrix_to_json(mat));
  return out;
}

std::vector<ComplexMatrix> parse_matrix_list(const json& j, const char* name) {
  if (!j.is_array() || j.empty())
    throw IoError(std::string("field \"") + name + "\" must be a nonempty list of matrices");
  std::vector<ComplexMatrix> list;
  list.reserve(j.size());
  for (const json& entry : j) list.push_back(parse_matrix(entry, name));
  return list;
}

json system_to_doc(const StructuredBilinearSystem& sys) {
  json doc;
  doc["n"] = sys.state_dim();
  doc["m"] = sys.num_inputs();
  doc["p"] = sys.num_outputs();
  json mats;
  switch (sys.system_template()) {
  case SystemTemplate::FirstOrder: {
    const FirstOrderForm& f = sys.first_order();
    doc["template"] = "first_order";
    mats["E"] = matrix_to_json(f.E);
    mats["A"] = matrix_to_json(f.A);
    mats["N"] = matrix_list_to_json(f.N);
    mats["B"] = matrix_to_json(f.B);
    mats["C"] = matrix_to_json(f.C);
    break;
  }
  case SystemTemplate::SecondOrder: {
    const SecondOrderForm& f = sys.second_order();
    doc["template"] = "second_order";
    mats["M"] = matrix_to_json(f.M);
    mats["D"] = matrix_to_json(f.D);
    mats["K"] = matrix_to_json(f.K);
    mats["Np"] = matrix_list_to_json(f.Np);
    mats["Nv"] = matrix_list_to_json(f.Nv);
    mats["Bu"] = matrix_to_json(f.Bu);
    mats["Cp"] = matrix_to_json(f.Cp);
    mats["Cv"] = matrix_to_json(f.Cv);
    break;
  }
  case SystemTemplate::TimeDelay: {
    const TimeDelayForm& f = sys.time_delay();
    doc["template"] = "time_delay";
    doc["tau"] = f.tau;
    mats["E"] = matrix_to_json(f.E);
    mats["A"] = matrix_to_json(f.A);
    mats["Ad"] = matrix_to_json(f.Ad);
    mats["N"] = matrix_list_to_json(f.N);
    mats["B"] = matrix_to_json(f.B);
    mats["C"] = matrix_to_json(f.C);
    break;
  }
  case SystemTemplate::Generic:
    throw IoError("to_json: generic-template systems hold closures and cannot be serialized");
  }
  doc["matrices"] = std::move(mats);
  return doc;
}

StructuredBilinearSystem system_from_doc(const json& doc) {
  const json& tpl_field = field(doc, "template");
  if (!tpl_field.is_string()) throw IoError("field \"template\" must be a string");
  const std::string tpl = tpl_field.get<std::string>();
  const std::size_t n = parse_dim(doc, "n");
  const std::size_t m = parse_dim(doc, "m");
  const std::size_t p = parse_dim(doc, "p");
  const json& mats = field(doc, "matrices");
  if (!mats.is_object()) throw IoError("field \"matrices\" must be an object");

  auto check_dims = [&](const StructuredBilinearSystem& sys) {
    if (sys.state_dim() != n || sys.num_inputs() != m || sys.num_outputs() != p)
      throw IoError("declared dimensions (n, m, p) disagree with the stored matrices");
  };

  if (tpl == "first_order") {
    FirstOrderForm f;
    f.E = parse_matrix(field(mats, "E"), "E");
    f.A = parse_matrix(field(mats, "A"), "A");
    f.N = parse_matrix_list(field(mats, "N"), "N");
    f.B = parse_matrix(field(mats, "B"), "B");
    f.C = parse_matrix(field(mats, "C"), "C");
    StructuredBilinearSystem sys(std::move(f));
    check_dims(sys);
    return sys;
  }
  if (tpl == "second_order") {
    SecondOrderForm f;
    f.M = parse_matrix(field(mats, "M"), "M");
    f.D = parse_matrix(field(mats, "D"), "D");
    f.K = parse_matrix(field(mats, "K"), "K");
    f.Np = parse_matrix_list(field(mats, "Np"), "Np");
    f.Nv = parse_matrix_list(field(mats, "Nv"), "Nv");
    f.Bu = parse_matrix(field(mats, "Bu"), "Bu");
    f.Cp = parse_matrix(field(mats, "Cp"), "Cp");
    f.Cv = parse_matrix(field(mats, "Cv"), "Cv");
    StructuredBilinearSystem sys(std::move(f));
    check_dims(sys);
    return sys;
  }
  if (tpl == "time_delay") {
    TimeDelayForm f;
    f.E = parse_matrix(field(mats, "E"), "E");
    f.A = parse_matrix(field(mats, "A"), "A");
    f.Ad = parse_matrix(field(mats, "Ad"), "Ad");
    f.tau = parse_double(field(doc, "tau"), "tau");
    f.N = parse_matrix_list(field(mats, "N"), "N");
    f.B = parse_matrix(field(mats, "B"), "B");
    f.C = parse_matrix(field(mats, "C"), "C");
    StructuredBilinearSystem sys(std::move(f));
    check_dims(sys);
    return sys;
  }
  throw IoError("unknown template \"" + tpl +
                "\" (expected first_order, second_order, or time_delay)");
}

const char* side_string(ProjectionSide side) {
  switch (side) {
  case ProjectionSide::VOnly: return "v";
  case ProjectionSide::WOnly: return "w";
  case ProjectionSide::TwoSided: return "two";
  case ProjectionSide::OneSidedWEqualsV: return "w=v";
  }
  throw IoError("to_json: unrepresentable projection side");
}

ProjectionSide side_from_string(const std::string& s) {
  if (s == "v") return ProjectionSide::VOnly;
  if (s == "w") return ProjectionSide::WOnly;
  if (s == "two") return ProjectionSide::TwoSided;
  if (s == "w=v") return ProjectionSide::OneSidedWEqualsV;
  throw IoError("unknown side \"" + s + "\" (expected v, w, two, or w=v)");
}

json points_to_json(const std::vector<Complex>& points) {
  json out = json::array();
  for (Complex s : points) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw IoError("to_json: non-finite interpolation point cannot be serialized");
    out.push_back(json::array({s.real(), s.imag()}));
  }
  return out;
}

json orders_to_json(const std::vector<int>& orders) {
  json out = json::array();
  for (int d : orders) out.push_back(d);
  return out;
}

std::vector<Complex> parse_points(const json& j, const char* name) {
  if (!j.is_array()) throw IoError(std::string("field \"") + name + "\" must be an array");
  std::vector<Complex> points;
  points.reserve(j.size());
  for (const json& entry : j) points.push_back(parse_entry(entry, name));
  return points;
}

std::vector<int> parse_orders(const json& j, const char* name) {
  if (!j.is_array()) throw IoError(std::string("field \"") + name + "\" must be an array");
  std::vector<int> orders;
  orders.reserve(j.size());
  for (const json& entry : j) {
    if (!entry.is_number_integer() || entry.get<std::int64_t>() < 0)
      throw IoError(std::string("field \"") + name + "\" must hold nonnegative integers");
    orders.push_back(entry.get<int>());
  }
  return orders;
}

PointTuple parse_tuple(const json& points, const json& orders, const char* points_name,
                       const char* orders_name) {
  PointTuple t;
  t.points = parse_points(points, points_name);
  t.orders = parse_orders(orders, orders_name);
  if (!t.orders.empty() && t.orders.size() != t.points.size())
    throw IoError(std::string("\"") + orders_name + "\" length must match \"" + points_name +
                  "\" length (or be empty for plain interpolation)");
  return t;
}

std::vector<PointTuple> parse_tuple_list(const json& j, const char* name) {
  if (!j.is_array()) throw IoError(std::string("field \"") + name + "\" must be an array");
  std::vector<PointTuple> tuples;
  tuples.reserve(j.size());
  for (const json& entry : j) {
    if (!entry.is_object())
      throw IoError(std::string("field \"") + name + "\" must hold {points, orders} objects");
    const json empty = json::array();
    const json& orders = entry.contains("orders") ? entry.at("orders") : empty;
    tuples.push_back(parse_tuple(field(entry, "points"), orders, "points", "orders"));
  }
  return tuples;
}

json spec_to_doc(const InterpolationSpec& spec) {
  json doc;
  const bool extended = spec.v_tuples.size() > 1 || spec.w_tuples.size() > 1;
  if (extended) {
    auto tuples_to_json = [](const std::vector<PointTuple>& tuples) {
      json out = json::array();
      for (const PointTuple& t : tuples)
        out.push_back(json{{"points", points_to_json(t.points)}, {"orders", orders_to_json(t.orders)}});
      return out;
    };
    doc["v_tuples"] = tuples_to_json(spec.v_tuples);
    doc["w_tuples"] = tuples_to_json(spec.w_tuples);
  } else {
    doc["v_points"] = spec.v_tuples.empty() ? json::array() : points_to_json(spec.v_tuples[0].points);
    doc["v_orders"] = spec.v_tuples.empty() ? json::array() : orders_to_json(spec.v_tuples[0].orders);
    doc["w_points"] = spec.w_tuples.empty() ? json::array() : points_to_json(spec.w_tuples[0].points);
    doc["w_orders"] = spec.w_tuples.empty() ? json::array() : orders_to_json(spec.w_tuples[0].orders);
  }
  doc["side"] = side_string(spec.side);
  doc["realify"] = spec.realify;
  doc["tol"] = spec.tol;
  return doc;
}

InterpolationSpec spec_from_doc(const json& doc) {
  InterpolationSpec spec;
  const bool extended = doc.contains("v_tuples") || doc.contains("w_tuples");
  if (extended) {
    if (doc.contains("v_points") || doc.contains("w_points"))
      throw IoError("spec mixes flat point keys with tuple lists");
    if (doc.contains("v_tuples")) spec.v_tuples = parse_tuple_list(doc.at("v_tuples"), "v_tuples");
    if (doc.contains("w_tuples")) spec.w_tuples = parse_tuple_list(doc.at("w_tuples"), "w_tuples");
  } else {
    const json empty = json::array();
    if (doc.contains("v_points")) {
      PointTuple t = parse_tuple(doc.at("v_points"),
                                 doc.contains("v_orders") ? doc.at("v_orders") : empty,
                                 "v_points", "v_orders");
      if (!t.points.empty()) spec.v_tuples.push_back(std::move(t));
    }
    if (doc.contains("w_points")) {
      PointTuple t = parse_tuple(doc.at("w_points"),
                                 doc.contains("w_orders") ? doc.at("w_orders") : empty,
                                 "w_points", "w_orders");
      if (!t.points.empty()) spec.w_tuples.push_back(std::move(t));
    }
  }
  const json& side = field(doc, "side");
  if (!side.is_string()) throw IoError("field \"side\" must be a string");
  spec.side = side_from_string(side.get<std::string>());
  if (doc.contains("realify")) {
    if (!doc.at("realify").is_boolean()) throw IoError("field \"realify\" must be a boolean");
    spec.realify = doc.at("realify").get<bool>();
  }
  if (doc.contains("tol")) spec.tol = parse_double(doc.at("tol"), "tol");
  return spec;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing \"" + path + "\"");
}

/// nlohmann type errors escaping the explicit checks still mean bad input.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed document: ") + e.what());
  }
}

} // namespace

std::string to_json(const StructuredBilinearSystem& sys) { return dump(system_to_doc(sys)); }

StructuredBilinearSystem system_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return guarded([&] { return system_from_doc(doc); });
}

std::string to_json(const ReducedModel& rom) {
  json doc = system_to_doc(rom.system);
  doc["V"] = matrix_to_json(rom.V);
  doc["W"] = matrix_to_json(rom.W);
  doc["spec"] = spec_to_doc(rom.spec);
  return dump(doc);
}

ReducedModel reduced_model_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return guarded([&] {
    ReducedModel rom{system_from_doc(doc), parse_matrix(field(doc, "V"), "V"),
                     parse_matrix(field(doc, "W"), "W"), spec_from_doc(field(doc, "spec")),
                     {}};
    const std::size_t r = rom.system.state_dim();
    if (rom.V.cols() != r || rom.W.cols() != r || rom.V.rows() != rom.W.rows())
      throw IoError("basis shapes disagree with the reduced dimension");
    return rom;
  });
}

std::string to_json(const InterpolationSpec& spec) { return dump(spec_to_doc(spec)); }

InterpolationSpec spec_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return guarded([&] { return spec_from_doc(doc); });
}

void save_system(const StructuredBilinearSystem& sys, const std::string& path) {
  write_file(path, to_json(sys));
}

StructuredBilinearSystem load_system(const std::string& path) {
  return system_from_json(read_file(path));
}

void save_reduced_model(const ReducedModel& rom, const std::string& path) {
  write_file(path, to_json(rom));
}

ReducedModel load_reduced_model(const std::string& path) {
  return reduced_model_from_json(read_file(path));
}

void save_spec(const InterpolationSpec& spec, const std::string& path) {
  write_file(path, to_json(spec));
}

InterpolationSpec load_spec(const std::string& path) {
  return spec_from_json(read_file(path));
}

} // namespace strbil::io
