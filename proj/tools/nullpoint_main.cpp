// Command-line surface: determinant evaluation, root solving, coefficient and
// wavefunction export, and the table/figure reproduction reports.
//
// Exit codes: 0 ok, 2 domain error, 3 no root in window, 4 I/O failure.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullpoint/determinants.hpp"
#include "nullpoint/repro.hpp"
#include "nullpoint/solver.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nullpoint;

constexpr double kPi = std::numbers::pi;
constexpr const char* kSchemaTag = "nullpoint-report/1";

// Locale-independent shortest round-trip formatting.
std::string fmt(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

struct CommonArgs {
  std::string model;
  double energy = 0.0;
  double height = 1.0;
  double rect_length = 0.0;
  double tri_length = 0.0;
  double delta_strength = 1.0;
  double xi = 1.0;
  bool degrees = false;
  std::string format = "csv";
  std::string out_path;
  int jobs = 1;

  double angle_in(double value) const {
    return degrees ? value * kPi / 180.0 : value;
  }
};

void add_model_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--model", args.model, "barrier model: rect|tri|delta|scaled")
      ->required();
  cmd->add_option("--E", args.energy, "particle energy [eV]")->required();
  cmd->add_option("--V0", args.height, "barrier height [eV]");
  cmd->add_option("--b", args.rect_length, "rectangular barrier length [nm]");
  cmd->add_option("--c", args.tri_length, "triangular barrier length [nm]");
  cmd->add_option("--alpha", args.delta_strength,
                  "delta barrier strength [eV nm] (does not move the roots)");
  cmd->add_option("--xi", args.xi, "height/length scale factor (scaled model)");
}

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--format", args.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", args.out_path, "output path (default stdout)");
  cmd->add_flag("--degrees", args.degrees,
                "interpret --theta/--theta-min/--theta-max in degrees");
}

CircuitSpec make_spec(const CommonArgs& args) {
  CircuitSpec spec;
  spec.energy = args.energy;
  if (args.model == "rect") {
    if (args.rect_length <= 0.0)
      throw std::domain_error("rect model requires --b > 0");
    spec.barrier = RectangularBarrier{args.height, args.rect_length};
  } else if (args.model == "tri") {
    if (args.tri_length <= 0.0)
      throw std::domain_error("tri model requires --c > 0");
    spec.barrier = TriangularBarrier{args.height, args.tri_length};
  } else if (args.model == "delta") {
    spec.barrier = DeltaBarrier{args.delta_strength};
  } else if (args.model == "scaled") {
    if (args.rect_length <= 0.0)
      throw std::domain_error("scaled model requires --b > 0");
    spec.barrier =
        ScaledRectangularBarrier{args.height, args.rect_length, args.xi};
  } else {
    throw std::domain_error("unknown model '" + args.model +
                            "' (expected rect|tri|delta|scaled)");
  }
  validate(spec);
  return spec;
}

ordered_json config_json(const CommonArgs& args) {
  ordered_json j;
  j["model"] = args.model;
  j["E_ev"] = args.energy;
  j["V0_ev"] = args.height;
  if (args.model == "rect" || args.model == "scaled") j["b_nm"] = args.rect_length;
  if (args.model == "tri") j["c_nm"] = args.tri_length;
  if (args.model == "delta") j["alpha_ev_nm"] = args.delta_strength;
  if (args.model == "scaled") j["xi"] = args.xi;
  j["degrees"] = args.degrees;
  j["format"] = args.format;
  j["jobs"] = args.jobs;
  return j;
}

// Writes the rendered report; throws std::ios_base::failure on I/O problems.
void emit(const CommonArgs& args, const std::string& text) {
  if (args.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(args.out_path);
  if (!out) throw std::ios_base::failure("cannot open " + args.out_path);
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + args.out_path);
}

SolverOptions window_options(const CommonArgs& args, double theta_min,
                             double theta_max, double grid_step, double tol) {
  SolverOptions options;
  options.phase_min = args.angle_in(theta_min);
  options.phase_max = args.angle_in(theta_max);
  options.grid_step = grid_step;
  options.det_tolerance = tol;
  return options;
}

// ---- det ----------------------------------------------------------------

int run_det(const CommonArgs& args, double theta_raw) {
  const double theta = args.angle_in(theta_raw);
  const CircuitSpec spec = make_spec(args);
  const DeterminantEvaluator det(spec);
  const double value = det(theta);
  if (args.format == "json") {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["config"] = config_json(args);
    j["config"]["theta_rad"] = theta;
    j["value"] = value;
    j["normalization"] = std::string(det.normalization());
    emit(args, j.dump(2) + "\n");
  } else {
    emit(args, fmt(value) + "\n");
  }
  return 0;
}

// ---- roots ---------------------------------------------------------------

std::string roots_csv(const std::vector<RootSolution>& roots) {
  std::ostringstream os;
  os << "branch_index,theta_rad,theta_deg,length_nm,det_residual,matrix_condition\n";
  for (const auto& r : roots)
    os << r.branch_index << ',' << fmt(r.wire_phase) << ','
       << fmt(r.wire_phase * 180.0 / kPi) << ',' << fmt(r.pre_barrier_length)
       << ',' << fmt(r.det_residual) << ',' << fmt(r.matrix_condition) << '\n';
  return os.str();
}

ordered_json root_json(const RootSolution& r) {
  ordered_json j;
  j["branch_index"] = r.branch_index;
  j["theta_rad"] = r.wire_phase;
  j["theta_deg"] = r.wire_phase * 180.0 / kPi;
  j["length_nm"] = r.pre_barrier_length;
  j["det_residual"] = r.det_residual;
  j["matrix_condition"] = r.matrix_condition;
  return j;
}

int run_roots(const CommonArgs& args, const SolverOptions& options) {
  const CircuitSpec spec = make_spec(args);
  const auto roots = scan_roots(spec, options);
  if (roots.empty()) throw NoRootInWindow("no root in the requested window");
  if (args.format == "json") {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["config"] = config_json(args);
    j["config"]["theta_min_rad"] = options.phase_min;
    j["config"]["theta_max_rad"] = options.phase_max;
    j["config"]["grid_step_rad"] = options.grid_step;
    j["config"]["det_tolerance"] = options.det_tolerance;
    j["roots"] = ordered_json::array();
    for (const auto& r : roots) j["roots"].push_back(root_json(r));
    if (std::holds_alternative<DeltaBarrier>(spec.barrier))
      j["notes"] = {"delta model: roots sit at theta = -n pi for any alpha"};
    emit(args, j.dump(2) + "\n");
  } else {
    emit(args, roots_csv(roots));
  }
  return 0;
}

// ---- coeffs ---------------------------------------------------------------

int run_coeffs(const CommonArgs& args, int branch, const SolverOptions& options) {
  const CircuitSpec spec = make_spec(args);
  const RootSolution root = solve_for_length(spec, branch, options);
  const CoefficientSet coeffs = recover_coefficients(spec, root.wire_phase);
  if (args.format == "json") {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["config"] = config_json(args);
    j["config"]["branch"] = branch;
    j["root"] = root_json(root);
    j["coefficients"] = {{"A", coeffs.A}, {"B", coeffs.B}, {"C", coeffs.C},
                         {"D", coeffs.D}};
    j["boundary_residuals"] = coeffs.boundary_residuals;
    emit(args, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "branch_index,theta_rad,length_nm,A,B,C,D,"
          "res_psi_origin,res_dpsi_origin,res_psi_closure,res_dpsi_closure\n";
    os << root.branch_index << ',' << fmt(root.wire_phase) << ','
       << fmt(root.pre_barrier_length) << ',' << fmt(coeffs.A) << ','
       << fmt(coeffs.B) << ',' << fmt(coeffs.C) << ',' << fmt(coeffs.D);
    for (double r : coeffs.boundary_residuals) os << ',' << fmt(r);
    os << '\n';
    emit(args, os.str());
  }
  return 0;
}

// ---- wavefunction ----------------------------------------------------------

int run_wavefunction(const CommonArgs& args, int branch, int samples,
                     bool normalize, const SolverOptions& options) {
  const CircuitSpec spec = make_spec(args);
  const RootSolution root = solve_for_length(spec, branch, options);
  const CoefficientSet coeffs = recover_coefficients(spec, root.wire_phase);
  const WavefunctionTrace trace =
      trace_wavefunction(spec, coeffs, root.wire_phase, samples, normalize);
  if (args.format == "json") {
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["config"] = config_json(args);
    j["config"]["branch"] = branch;
    j["config"]["samples"] = samples;
    j["config"]["normalize"] = normalize;
    j["root"] = root_json(root);
    j["junction_residual"] = trace.junction_residual;
    j["closure_residual"] = trace.closure_residual;
    j["samples"] = ordered_json::array();
    for (const auto& s : trace.samples)
      j["samples"].push_back({{"x_nm", s.position}, {"psi", s.value},
                              {"region", s.region}});
    emit(args, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "x_nm,psi,region\n";
    for (const auto& s : trace.samples)
      os << fmt(s.position) << ',' << fmt(s.value) << ',' << s.region << '\n';
    os << "# junction_residual=" << fmt(trace.junction_residual) << '\n';
    os << "# closure_residual=" << fmt(trace.closure_residual) << '\n';
    emit(args, os.str());
  }
  return 0;
}

// ---- repro -----------------------------------------------------------------

std::string table_csv(const repro::TableReport& report) {
  std::ostringstream os;
  os << "energy_ev,barrier_length_nm,reference_value,exact_length_nm,"
        "exact_theta_rad,det_residual,second_length_nm,linearized_length_nm,"
        "ratio_diagnostic,agreement\n";
  for (const auto& c : report.cells) {
    os << fmt(c.energy) << ',' << fmt(c.barrier_length) << ','
       << fmt(c.reference_value) << ',' << fmt(c.exact_length) << ','
       << fmt(c.exact_phase) << ',' << fmt(c.det_residual) << ','
       << fmt(c.second_length) << ',' << fmt(c.linearized_length) << ','
       << fmt(c.ratio_diagnostic) << ',' << repro::to_string(c.agreement)
       << '\n';
  }
  for (const auto& note : report.notes) os << "# note: " << note << '\n';
  return os.str();
}

ordered_json table_json(const repro::TableReport& report) {
  ordered_json j;
  j["cells"] = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json cell;
    cell["energy_ev"] = c.energy;
    cell["barrier_length_nm"] = c.barrier_length;
    cell["reference_value"] = c.reference_value;
    cell["exact_length_nm"] = c.exact_length;
    cell["exact_theta_rad"] = c.exact_phase;
    cell["det_residual"] = c.det_residual;
    cell["second_length_nm"] = c.second_length;
    cell["linearized_length_nm"] = c.linearized_length;
    cell["ratio_diagnostic"] = c.ratio_diagnostic;
    cell["agreement"] = repro::to_string(c.agreement);
    j["cells"].push_back(cell);
  }
  j["summary"] = {
      {"EXACT", report.count(repro::Agreement::kExact)},
      {"UNIT-SHIFT", report.count(repro::Agreement::kUnitShift)},
      {"LINEARIZED-MATCH", report.count(repro::Agreement::kLinearizedMatch)},
      {"OUTLIER", report.count(repro::Agreement::kOutlier)}};
  j["notes"] = report.notes;
  return j;
}

int run_repro(const CommonArgs& args, const std::string& which, double sweep_height,
              double sweep_length, double sweep_energy,
              const std::vector<double>& sweep_scales) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["config"] = config_json(args);
  j["config"]["report"] = which;

  if (which == "table1" || which == "table2") {
    const auto report = which == "table1" ? repro::reproduce_table1(1.0, args.jobs)
                                          : repro::reproduce_table2(1.0, args.jobs);
    if (args.format == "json") {
      j.update(table_json(report));
      emit(args, j.dump(2) + "\n");
    } else {
      emit(args, table_csv(report));
    }
  } else if (which == "fig6") {
    const auto report = repro::fig6_stats(1.0, 1.0, {}, args.jobs);
    if (args.format == "json") {
      j["points"] = ordered_json::array();
      for (const auto& p : report.points)
        j["points"].push_back({{"energy_ev", p.energy},
                               {"lower_theta_rad", p.lower_phase},
                               {"upper_theta_rad", p.upper_phase},
                               {"midpoint_deg", p.midpoint_deg}});
      j["stats"] = {{"mean_deg", report.stats.mean_deg},
                    {"stddev_deg", report.stats.stddev_deg},
                    {"slope_deg_per_ev", report.stats.slope},
                    {"intercept_deg", report.stats.intercept},
                    {"count", report.stats.count}};
      j["notes"] = report.notes;
      emit(args, j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "energy_ev,lower_theta_rad,upper_theta_rad,midpoint_deg\n";
      for (const auto& p : report.points)
        os << fmt(p.energy) << ',' << fmt(p.lower_phase) << ','
           << fmt(p.upper_phase) << ',' << fmt(p.midpoint_deg) << '\n';
      os << "# mean_deg=" << fmt(report.stats.mean_deg)
         << " stddev_deg=" << fmt(report.stats.stddev_deg)
         << " slope_deg_per_ev=" << fmt(report.stats.slope)
         << " intercept_deg=" << fmt(report.stats.intercept) << '\n';
      for (const auto& note : report.notes) os << "# note: " << note << '\n';
      emit(args, os.str());
    }
  } else if (which == "xi-sweep") {
    const auto report =
        repro::xi_sweep(sweep_height, sweep_length, sweep_energy, sweep_scales);
    if (args.format == "json") {
      j["limit_theta_rad"] = report.limit_phase;
      j["points"] = ordered_json::array();
      for (const auto& p : report.points)
        j["points"].push_back({{"xi", p.scale},
                               {"tracked_theta_rad", p.tracked_phase},
                               {"limit_gap_rad", p.limit_gap},
                               {"companion_theta_rad", p.companion_phase},
                               {"companion_gap_to_2pi_rad", p.companion_gap_to_2pi}});
      j["family"] = report.family;
      j["notes"] = report.notes;
      emit(args, j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "xi,tracked_theta_rad,limit_gap_rad,companion_theta_rad,"
            "companion_gap_to_2pi_rad\n";
      for (const auto& p : report.points)
        os << fmt(p.scale) << ',' << fmt(p.tracked_phase) << ','
           << fmt(p.limit_gap) << ',' << fmt(p.companion_phase) << ','
           << fmt(p.companion_gap_to_2pi) << '\n';
      os << "# limit_theta_rad=" << fmt(report.limit_phase) << '\n';
      os << "# family: " << report.family << '\n';
      for (const auto& note : report.notes) os << "# note: " << note << '\n';
      emit(args, os.str());
    }
  } else {
    throw std::domain_error("unknown report '" + which +
                            "' (expected table1|table2|fig6|xi-sweep)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"null-point solver for closed quantum nanocircuits"};
  app.require_subcommand(1);

  CommonArgs args;
  double theta = 0.0;
  double theta_min = -4.0 * kPi - 1.0;
  double theta_max = 0.0;
  double grid_step = 1e-3;
  double tol = 1e-10;
  int branch = 0;
  int samples = 201;
  bool normalize = false;
  std::string report_kind;
  double sweep_height = 1.0, sweep_length = 0.5, sweep_energy = 0.5;
  std::vector<double> sweep_scales;

  CLI::App* det_cmd = app.add_subcommand("det", "evaluate the normalized determinant");
  add_model_flags(det_cmd, args);
  add_output_flags(det_cmd, args);
  det_cmd->add_option("--theta", theta, "wire phase theta = k a [rad]")->required();

  CLI::App* roots_cmd = app.add_subcommand("roots", "scan a theta window for null-points");
  add_model_flags(roots_cmd, args);
  add_output_flags(roots_cmd, args);
  roots_cmd->add_option("--theta-min", theta_min, "window lower edge [rad]");
  roots_cmd->add_option("--theta-max", theta_max, "window upper edge [rad]");
  roots_cmd->add_option("--grid-step", grid_step, "scan resolution [rad]");
  roots_cmd->add_option("--tol", tol, "determinant tolerance");

  CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "wavefunction coefficients at a root");
  add_model_flags(coeffs_cmd, args);
  add_output_flags(coeffs_cmd, args);
  coeffs_cmd->add_option("--branch", branch, "root ordinal, nearest zero first");
  coeffs_cmd->add_option("--theta-min", theta_min, "window lower edge [rad]");
  coeffs_cmd->add_option("--theta-max", theta_max, "window upper edge [rad]");
  coeffs_cmd->add_option("--grid-step", grid_step, "scan resolution [rad]");
  coeffs_cmd->add_option("--tol", tol, "determinant tolerance");

  CLI::App* wf_cmd = app.add_subcommand("wavefunction", "sample psi around the loop");
  add_model_flags(wf_cmd, args);
  add_output_flags(wf_cmd, args);
  wf_cmd->add_option("--branch", branch, "root ordinal, nearest zero first");
  wf_cmd->add_option("--samples", samples, "number of samples")->check(CLI::Range(2, 1000000));
  wf_cmd->add_flag("--normalize", normalize, "divide by the discrete L2 norm");
  wf_cmd->add_option("--theta-min", theta_min, "window lower edge [rad]");
  wf_cmd->add_option("--theta-max", theta_max, "window upper edge [rad]");
  wf_cmd->add_option("--grid-step", grid_step, "scan resolution [rad]");
  wf_cmd->add_option("--tol", tol, "determinant tolerance");

  CLI::App* repro_cmd = app.add_subcommand("repro", "regenerate the reference tables and statistics");
  repro_cmd->add_option("report", report_kind, "table1|table2|fig6|xi-sweep")->required();
  repro_cmd->add_option("--format", args.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  repro_cmd->add_option("--out", args.out_path, "output path (default stdout)");
  repro_cmd->add_option("--jobs", args.jobs, "parallel workers for independent cells")
      ->check(CLI::Range(1, 256));
  repro_cmd->add_option("--V0", sweep_height, "barrier height for xi-sweep [eV]");
  repro_cmd->add_option("--b", sweep_length, "barrier length for xi-sweep [nm]");
  repro_cmd->add_option("--E", sweep_energy, "energy for xi-sweep [eV]");
  repro_cmd->add_option("--xi", sweep_scales, "xi values for xi-sweep (ascending)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (det_cmd->parsed()) return run_det(args, theta);
    if (roots_cmd->parsed())
      return run_roots(args, window_options(args, theta_min, theta_max, grid_step, tol));
    if (coeffs_cmd->parsed())
      return run_coeffs(args, branch,
                        window_options(args, theta_min, theta_max, grid_step, tol));
    if (wf_cmd->parsed())
      return run_wavefunction(args, branch, samples, normalize,
                              window_options(args, theta_min, theta_max, grid_step, tol));
    if (repro_cmd->parsed())
      return run_repro(args, report_kind, sweep_height, sweep_length, sweep_energy,
                       sweep_scales);
  } catch (const NoRootInWindow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
