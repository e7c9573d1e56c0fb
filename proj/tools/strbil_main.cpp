// Copyright (c) 2026 strbil contributors
// SPDX-License-Identifier: MIT

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strbil/conditions.hpp"
#include "strbil/errors.hpp"
#include "strbil/interpolation.hpp"
#include "strbil/models.hpp"
#include "strbil/reduction.hpp"
#include "strbil/simulation.hpp"
#include "strbil/system_io.hpp"
#include "strbil/transfer.hpp"

namespace {

using strbil::Complex;
using strbil::InterpolationSpec;
using strbil::PointTuple;
using strbil::ProjectionSide;
using strbil::StructuredBilinearSystem;

void emit_error_json(const std::string& kind, const std::string& code,
                     const std::string& message) {
  nlohmann::json doc;
  doc["error"] = {{"kind", kind}, {"code", code}, {"message", message}};
  std::cerr << doc.dump() << "\n";
}

/// "logspace:a:b:npts" -> npts values 10^a .. 10^b, exponents equally spaced.
std::vector<double> parse_logspace(const std::string& text) {
  const auto fail = [&text]() -> std::vector<double> {
    throw strbil::IoError("grid \"" + text + "\" must use the form logspace:a:b:npts");
  };
  const std::string prefix = "logspace:";
  if (text.rfind(prefix, 0) != 0) return fail();
  std::vector<std::string> parts;
  std::string rest = text.substr(prefix.size());
  std::size_t pos = 0;
  while ((pos = rest.find(':')) != std::string::npos) {
    parts.push_back(rest.substr(0, pos));
    rest.erase(0, pos + 1);
  }
  parts.push_back(rest);
  if (parts.size() != 3) return fail();
  double a = 0.0, b = 0.0;
  long npts = 0;
  try {
    std::size_t used = 0;
    a = std::stod(parts[0], &used);
    if (used != parts[0].size()) return fail();
    b = std::stod(parts[1], &used);
    if (used != parts[1].size()) return fail();
    npts = std::stol(parts[2], &used);
    if (used != parts[2].size()) return fail();
  } catch (const std::exception&) {
    return fail();
  }
  if (!std::isfinite(a) || !std::isfinite(b) || npts < 1) return fail();
  std::vector<double> values(static_cast<std::size_t>(npts));
  for (long i = 0; i < npts; ++i) {
    const double e = npts == 1 ? a : a + (b - a) * static_cast<double>(i) /
                                             static_cast<double>(npts - 1);
    values[static_cast<std::size_t>(i)] = std::pow(10.0, e);
  }
  return values;
}

/// Magnitudes to interpolation points: on the imaginary axis each magnitude
/// yields the conjugate pair +iw, -iw (interleaved, so pairing by index keeps
/// conjugate tuples together); on the real axis the magnitudes themselves.
std::vector<Complex> axis_points(const std::vector<double>& magnitudes, bool imaginary) {
  std::vector<Complex> points;
  points.reserve(magnitudes.size() * (imaginary ? 2 : 1));
  for (double w : magnitudes) {
    if (imaginary) {
      points.emplace_back(0.0, w);
      points.emplace_back(0.0, -w);
    } else {
      points.emplace_back(w, 0.0);
    }
  }
  return points;
}

ProjectionSide side_from_string(const std::string& s) {
  if (s == "v") return ProjectionSide::VOnly;
  if (s == "w") return ProjectionSide::WOnly;
  if (s == "two") return ProjectionSide::TwoSided;
  if (s == "w=v") return ProjectionSide::OneSidedWEqualsV;
  throw strbil::UnknownNameError("unknown side \"" + s + "\" (expected v, w, two, or w=v)");
}

/// Pair the level-1 list with the level-2 list index-wise into two-point
/// tuples (level-2 empty: plain one-point tuples). Each tuple's level-1 block
/// realizes a level-1 point and its level-2 block the paired arguments, which
/// reproduces the bundled experiments' reduced orders exactly.
InterpolationSpec make_paired_spec(const std::vector<Complex>& level1,
                                   const std::vector<Complex>& level2, ProjectionSide side,
                                   bool realify, double tol) {
  if (!level2.empty() && level2.size() != level1.size())
    throw strbil::InvalidSizeError(
        "paired spec: level-1 and level-2 point lists must have the same length");
  std::vector<PointTuple> tuples;
  tuples.reserve(level1.size());
  for (std::size_t i = 0; i < level1.size(); ++i) {
    PointTuple t;
    t.points.push_back(level1[i]);
    if (!level2.empty()) t.points.push_back(level2[i]);
    tuples.push_back(std::move(t));
  }
  InterpolationSpec spec;
  spec.side = side;
  spec.realify = realify;
  spec.tol = tol;
  if (side != ProjectionSide::WOnly) spec.v_tuples = tuples;
  if (side == ProjectionSide::WOnly || side == ProjectionSide::TwoSided)
    spec.w_tuples = std::move(tuples);
  return spec;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw strbil::IoError("cannot open \"" + out_path + "\" for writing");
  out << text;
  out.flush();
  if (!out) throw strbil::IoError("failed while writing \"" + out_path + "\"");
}

template <typename Value>
void write_csv_file(const Value& value, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw strbil::IoError("cannot open \"" + path + "\" for writing");
  strbil::write_csv(value, out);
  out.flush();
  if (!out) throw strbil::IoError("failed while writing \"" + path + "\"");
}

double max_of(const std::vector<double>& values) {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<double> grid_errors(const strbil::ErrorGrid& grid) {
  std::vector<double> errors;
  errors.reserve(grid.points.size());
  for (const auto& point : grid.points)
    if (!point.skipped) errors.push_back(point.relative_error);
  return errors;
}

// ---------------------------------------------------------------------------
// subcommand runners

struct ModelMakeOptions {
  std::string name;
  std::size_t n = 0;
  bool mimo = false;
  strbil::models::MsdParams msd;
  strbil::models::HeatedRodParams rod;
  std::string out;
};

int run_model_make(const ModelMakeOptions& opt) {
  if (opt.name != "msd" && opt.name != "rod")
    throw strbil::UnknownNameError("model make: unknown name \"" + opt.name +
                                   "\" (expected msd or rod)");
  if (opt.name == "rod" && opt.mimo)
    throw strbil::InvalidSizeError("model make: --mimo applies to the msd model only");
  const StructuredBilinearSystem sys = opt.name == "msd"
                                           ? strbil::models::make_msd(opt.n, opt.mimo, opt.msd)
                                           : strbil::models::make_heated_rod(opt.n, opt.rod);
  write_text(opt.out, strbil::io::to_json(sys));
  if (!opt.out.empty() && opt.out != "-")
    std::printf("wrote %s (n=%zu, m=%zu, p=%zu)\n", opt.out.c_str(), sys.state_dim(),
                sys.num_inputs(), sys.num_outputs());
  return 0;
}

struct SpecMakeOptions {
  std::string level1;
  std::string level2;
  bool imaginary = false;
  std::string side = "w=v";
  bool realify = false;
  double tol = 1e-10;
  std::string out;
};

int run_spec_make(const SpecMakeOptions& opt) {
  const std::vector<Complex> l1 = axis_points(parse_logspace(opt.level1), opt.imaginary);
  std::vector<Complex> l2;
  if (!opt.level2.empty()) l2 = axis_points(parse_logspace(opt.level2), opt.imaginary);
  const InterpolationSpec spec =
      make_paired_spec(l1, l2, side_from_string(opt.side), opt.realify, opt.tol);
  strbil::validate(spec);
  write_text(opt.out, strbil::io::to_json(spec));
  if (!opt.out.empty() && opt.out != "-")
    std::printf("wrote %s (%zu point tuples per constrained side)\n", opt.out.c_str(),
                std::max(spec.v_tuples.size(), spec.w_tuples.size()));
  return 0;
}

struct ReduceOptions {
  std::string system;
  std::string spec;
  std::string out;
};

int run_reduce(const ReduceOptions& opt) {
  const StructuredBilinearSystem sys = strbil::io::load_system(opt.system);
  const InterpolationSpec spec = strbil::io::load_spec(opt.spec);
  const strbil::ReducedModel rom = strbil::reduce(sys, spec);
  strbil::io::save_reduced_model(rom, opt.out);
  std::printf("wrote %s (n=%zu -> r=%zu)\n", opt.out.c_str(), sys.state_dim(),
              rom.system.state_dim());
  for (const std::string& warning : rom.warnings)
    std::printf("warning: %s\n", warning.c_str());
  return 0;
}

struct SimulateOptions {
  std::string system;
  std::string input;
  double tf = 0.0;
  double dt = 0.0;
  std::string out;
};

int run_simulate(const SimulateOptions& opt) {
  const StructuredBilinearSystem sys = strbil::io::load_system(opt.system);
  const strbil::InputSignal u = strbil::models::standard_input(opt.input);
  const strbil::Trajectory traj = strbil::simulate(sys, u, opt.tf, opt.dt);
  write_csv_file(traj, opt.out);
  std::printf("wrote %s (%zu samples, dt=%g)\n", opt.out.c_str(), traj.times.size(), traj.dt);
  return 0;
}

struct FreqerrOptions {
  std::string fom;
  std::string rom;
  int level = 1;
  std::string grid;
  std::string out;
};

int run_freqerr(const FreqerrOptions& opt) {
  const StructuredBilinearSystem fom = strbil::io::load_system(opt.fom);
  const StructuredBilinearSystem rom = strbil::io::load_system(opt.rom);
  const std::vector<double> grid = parse_logspace(opt.grid);
  const strbil::ErrorGrid errors = strbil::relative_error_grid(fom, rom, opt.level, grid);
  write_csv_file(errors, opt.out);
  const std::vector<double> values = grid_errors(errors);
  std::printf("wrote %s (%zu points, max %.3e, median %.3e)\n", opt.out.c_str(),
              errors.points.size(), max_of(values), median_of(values));
  return 0;
}

struct VerifyOptions {
  std::string fom;
  std::string rom;
  std::string spec;
  double tol = 1e-8;
};

int run_verify(const VerifyOptions& opt) {
  const StructuredBilinearSystem fom = strbil::io::load_system(opt.fom);
  const StructuredBilinearSystem rom = strbil::io::load_system(opt.rom);
  const InterpolationSpec spec = strbil::io::load_spec(opt.spec);
  const auto conditions = strbil::implied_conditions(spec);
  const auto checks = strbil::check_conditions(fom, rom, conditions, opt.tol);

  std::size_t right = 0, left = 0, mixed = 0, failed = 0;
  for (const auto& check : checks) {
    switch (check.condition.origin) {
    case 'V': ++right; break;
    case 'W': ++left; break;
    default: ++mixed; break;
    }
    if (!check.passed) ++failed;
  }

  std::printf("%-64s %12s  %s\n", "condition", "rel.error", "result");
  for (const auto& check : checks)
    std::printf("%-64s %12.4e  %s\n", strbil::describe(check.condition).c_str(),
                check.relative_error, check.passed ? "PASS" : "FAIL");
  if (spec.side == ProjectionSide::TwoSided)
    std::printf("checked %zu conditions: %zu right + %zu left + %zu mixed "
                "(k + theta + k*theta pattern)\n",
                checks.size(), right, left, mixed);
  else
    std::printf("checked %zu conditions: %zu right + %zu left\n", checks.size(), right, left);
  if (failed == 0) {
    std::printf("result: all %zu conditions pass (tol %g)\n", checks.size(), opt.tol);
    return 0;
  }
  std::printf("result: %zu of %zu conditions FAIL (tol %g)\n", failed, checks.size(), opt.tol);
  return 1;
}

struct ReproduceOptions {
  std::string experiment;
  std::size_t n = 0; // 0: experiment default
  std::string outdir = ".";
};

struct ExperimentSetup {
  StructuredBilinearSystem fom;
  InterpolationSpec spec;
  strbil::InputSignal input;
  double tf = 0.0;
  double dt = 0.0;
};

ExperimentSetup setup_experiment(const std::string& experiment, std::size_t n) {
  if (experiment == "msd-siso") {
    const auto pts = axis_points(parse_logspace("logspace:-4:4:3"), true);
    return {strbil::models::make_msd(n, false),
            make_paired_spec(pts, pts, ProjectionSide::OneSidedWEqualsV, true, 1e-10),
            strbil::models::standard_input("msd_siso"), 100.0, 1e-3};
  }
  if (experiment == "msd-mimo") {
    const auto l1 = axis_points(parse_logspace("logspace:-4:4:3"), true);
    const auto l2 = axis_points(parse_logspace("logspace:-3:3:3"), true);
    return {strbil::models::make_msd(n, true),
            make_paired_spec(l1, l2, ProjectionSide::OneSidedWEqualsV, true, 1e-10),
            strbil::models::standard_input("msd_mimo"), 100.0, 1e-3};
  }
  if (experiment == "rod") {
    const auto l1 = axis_points(parse_logspace("logspace:-4:4:2"), true);
    const auto l2 = axis_points(parse_logspace("logspace:-2:2:2"), true);
    return {strbil::models::make_heated_rod(n),
            make_paired_spec(l1, l2, ProjectionSide::TwoSided, true, 1e-10),
            strbil::models::standard_input("rod"), 10.0, 1e-3};
  }
  throw strbil::UnknownNameError("reproduce: unknown experiment \"" + experiment +
                                 "\" (expected msd-siso, msd-mimo, or rod)");
}

int run_reproduce(const ReproduceOptions& opt) {
  namespace fs = std::filesystem;
  const std::size_t n = opt.n != 0 ? opt.n : (opt.experiment == "rod" ? 200 : 100);
  const ExperimentSetup setup = setup_experiment(opt.experiment, n);

  std::error_code ec;
  fs::create_directories(opt.outdir, ec);
  if (ec)
    throw strbil::IoError("cannot create output directory \"" + opt.outdir +
                          "\": " + ec.message());
  const fs::path dir(opt.outdir);

  strbil::io::save_system(setup.fom, (dir / "model.json").string());
  strbil::io::save_spec(setup.spec, (dir / "spec.json").string());

  std::printf("reducing (n=%zu)...\n", n);
  const strbil::ReducedModel rom = strbil::reduce(setup.fom, setup.spec);
  strbil::io::save_reduced_model(rom, (dir / "rom.json").string());
  const std::size_t r = rom.system.state_dim();
  for (const std::string& warning : rom.warnings) std::printf("warning: %s\n", warning.c_str());

  const auto conditions = strbil::implied_conditions(setup.spec);
  const auto checks = strbil::check_conditions(setup.fom, rom.system, conditions, 1e-8);
  std::vector<double> cond_errors;
  cond_errors.reserve(checks.size());
  for (const auto& check : checks) cond_errors.push_back(check.relative_error);

  std::printf("frequency error grids...\n");
  const std::vector<double> grid1 = parse_logspace("logspace:-4:4:100");
  const std::vector<double> grid2 = parse_logspace("logspace:-4:4:30");
  const strbil::ErrorGrid err1 = strbil::relative_error_grid(setup.fom, rom.system, 1, grid1);
  const strbil::ErrorGrid err2 = strbil::relative_error_grid(setup.fom, rom.system, 2, grid2);
  write_csv_file(err1, (dir / "freqerr_level1.csv").string());
  write_csv_file(err2, (dir / "freqerr_level2.csv").string());

  const auto nsteps = static_cast<long long>(std::llround(setup.tf / setup.dt));
  std::printf("time simulation (%lld steps, full order)...\n", nsteps);
  const strbil::Trajectory traj_fom = strbil::simulate(setup.fom, setup.input, setup.tf, setup.dt);
  std::printf("time simulation (%lld steps, reduced order)...\n", nsteps);
  const strbil::Trajectory traj_rom =
      strbil::simulate(rom.system, setup.input, setup.tf, setup.dt);
  write_csv_file(traj_fom, (dir / "traj_fom.csv").string());
  write_csv_file(traj_rom, (dir / "traj_rom.csv").string());
  const strbil::ErrorSeries out_err = strbil::output_error(traj_fom, traj_rom);
  write_csv_file(out_err, (dir / "output_error.csv").string());

  std::vector<double> time_errors;
  time_errors.reserve(out_err.values.size());
  for (std::size_t i = 0; i < out_err.values.size(); ++i)
    if (!out_err.skipped[i]) time_errors.push_back(out_err.values[i]);

  const std::vector<double> g1 = grid_errors(err1);
  const std::vector<double> g2 = grid_errors(err2);
  nlohmann::json summary;
  summary["experiment"] = opt.experiment;
  summary["n"] = n;
  summary["r"] = r;
  summary["interpolation"] = {{"conditions", checks.size()},
                              {"max_relative_error", max_of(cond_errors)},
                              {"median_relative_error", median_of(cond_errors)}};
  summary["frequency_level1"] = {{"points", err1.points.size()},
                                 {"max_relative_error", max_of(g1)},
                                 {"median_relative_error", median_of(g1)}};
  summary["frequency_level2"] = {{"points", err2.points.size()},
                                 {"max_relative_error", max_of(g2)},
                                 {"median_relative_error", median_of(g2)}};
  summary["time_domain"] = {{"samples", out_err.values.size()},
                            {"max_relative_error", max_of(time_errors)},
                            {"median_relative_error", median_of(time_errors)}};
  summary["warnings"] = rom.warnings;
  write_text((dir / "summary.json").string(), summary.dump(2) + "\n");

  std::printf("experiment %s: n=%zu, r=%zu\n", opt.experiment.c_str(), n, r);
  std::printf("  interpolation conditions: %zu, max relative error %.3e\n", checks.size(),
              max_of(cond_errors));
  std::printf("  level-1 grid: max %.3e, median %.3e\n", max_of(g1), median_of(g1));
  std::printf("  level-2 grid: max %.3e, median %.3e\n", max_of(g2), median_of(g2));
  std::printf("  time domain: max %.3e, median %.3e\n", max_of(time_errors),
              median_of(time_errors));
  std::printf("artifacts written to %s\n", opt.outdir.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving interpolatory reduction of bilinear control systems"};
  app.require_subcommand(1);

  ModelMakeOptions mm;
  auto* model = app.add_subcommand("model", "benchmark model generators");
  model->require_subcommand(1);
  auto* model_make = model->add_subcommand("make", "generate a benchmark model as JSON");
  model_make->add_option("--name", mm.name, "model family: msd or rod")->required();
  model_make->add_option("--n", mm.n, "state dimension (masses / interior nodes)")->required();
  model_make->add_flag("--mimo", mm.mimo, "two-input/two-output msd variant");
  model_make->add_option("--mass", mm.msd.mass, "msd: mass (default 1)");
  model_make->add_option("--spring", mm.msd.spring, "msd: chain spring constant (default 2)");
  model_make->add_option("--damper", mm.msd.damper, "msd: chain damper constant (default 1)");
  model_make->add_option("--ground-spring", mm.msd.ground_spring,
                         "msd: ground spring constant (default 2)");
  model_make->add_option("--ground-damper", mm.msd.ground_damper,
                         "msd: ground damper constant (default 1)");
  model_make->add_option("--delay", mm.rod.delay, "rod: feedback delay (default 1)");
  model_make->add_option("--bilinear-scale", mm.rod.bilinear_scale,
                         "rod: bilinear weight scale (default 1)");
  model_make->add_option("--out", mm.out, "output path (default: stdout)");

  SpecMakeOptions sm;
  auto* spec_cmd = app.add_subcommand("spec", "interpolation spec builders");
  spec_cmd->require_subcommand(1);
  auto* spec_make = spec_cmd->add_subcommand("make", "build an interpolation spec as JSON");
  spec_make->add_option("--level1", sm.level1, "level-1 magnitudes, logspace:a:b:npts")
      ->required();
  spec_make->add_option("--level2", sm.level2,
                        "level-2 magnitudes, logspace:a:b:npts (paired with level-1 by index)");
  spec_make->add_flag("--imaginary", sm.imaginary,
                      "place points at +/- i*magnitude (conjugate-closed) instead of on the "
                      "real axis");
  spec_make->add_option("--side", sm.side, "projection side: v, w, two, or w=v (default w=v)");
  spec_make->add_flag("--realify", sm.realify, "request a real reduced model");
  spec_make->add_option("--tol", sm.tol, "basis rank tolerance (default 1e-10)");
  spec_make->add_option("--out", sm.out, "output path (default: stdout)");

  ReduceOptions rd;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a system per an interpolation spec");
  reduce_cmd->add_option("--system", rd.system, "full-order system JSON")->required();
  reduce_cmd->add_option("--spec", rd.spec, "interpolation spec JSON")->required();
  reduce_cmd->add_option("--out", rd.out, "reduced model JSON output path")->required();

  SimulateOptions si;
  auto* simulate_cmd = app.add_subcommand("simulate", "integrate a system in time");
  simulate_cmd->add_option("--system", si.system, "system JSON (full or reduced)")->required();
  simulate_cmd->add_option("--input", si.input, "input signal name: msd_siso, msd_mimo, or rod")
      ->required();
  simulate_cmd->add_option("--tf", si.tf, "final time")->required();
  simulate_cmd->add_option("--dt", si.dt, "time step")->required();
  simulate_cmd->add_option("--out", si.out, "trajectory CSV output path")->required();

  FreqerrOptions fe;
  auto* freqerr_cmd =
      app.add_subcommand("freqerr", "relative transfer-function error over a frequency grid");
  freqerr_cmd->add_option("--fom", fe.fom, "full-order system JSON")->required();
  freqerr_cmd->add_option("--rom", fe.rom, "reduced model JSON")->required();
  freqerr_cmd->add_option("--level", fe.level, "kernel level: 1 or 2 (default 1)");
  freqerr_cmd->add_option("--grid", fe.grid, "frequency grid, logspace:a:b:npts")->required();
  freqerr_cmd->add_option("--out", fe.out, "error CSV output path")->required();

  VerifyOptions vf;
  auto* verify_cmd =
      app.add_subcommand("verify", "check every interpolation condition implied by a spec");
  verify_cmd->add_option("--fom", vf.fom, "full-order system JSON")->required();
  verify_cmd->add_option("--rom", vf.rom, "reduced model JSON")->required();
  verify_cmd->add_option("--spec", vf.spec, "interpolation spec JSON")->required();
  verify_cmd->add_option("--tol", vf.tol, "pass tolerance (default 1e-8)");

  ReproduceOptions rp;
  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "run a bundled experiment end to end");
  reproduce_cmd
      ->add_option("--experiment", rp.experiment, "experiment name: msd-siso, msd-mimo, or rod")
      ->required();
  reproduce_cmd->add_option("--n", rp.n,
                            "full model dimension (default: 100 for msd, 200 for rod)");
  reproduce_cmd->add_option("--outdir", rp.outdir, "artifact directory (default: .)");

  int rc = 0;
  model_make->callback([&] { rc = run_model_make(mm); });
  spec_make->callback([&] { rc = run_spec_make(sm); });
  reduce_cmd->callback([&] { rc = run_reduce(rd); });
  simulate_cmd->callback([&] { rc = run_simulate(si); });
  freqerr_cmd->callback([&] { rc = run_freqerr(fe); });
  verify_cmd->callback([&] { rc = run_verify(vf); });
  reproduce_cmd->callback([&] { rc = run_reproduce(rp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error_json("validation", "usage", e.what());
    return 2;
  } catch (const strbil::Error& e) {
    const bool validation = e.kind() == strbil::ErrorKind::Validation;
    emit_error_json(validation ? "validation" : "numerical", e.code(), e.what());
    return validation ? 2 : 3;
  } catch (const std::exception& e) {
    emit_error_json("internal", "unexpected", e.what());
    return 1;
  }
  return rc;
}
