// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclone/averaging.hpp"
#include "qclone/invariants.hpp"
#include "qclone/machines.hpp"
#include "qclone/prepsolver.hpp"
#include "qclone/synth.hpp"
#include "qclone/table2.hpp"

namespace qclone::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

/// Rows of strings rendered with commas and LF endings. Fields containing a
/// comma or quote are quoted.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::string s;
    line(s, header_);
    for (const auto& r : rows_) line(s, r);
    return s;
  }

 private:
  static void line(std::string& s, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) s += ',';
      const auto& f = fields[i];
      if (f.find_first_of(",\"\n") == std::string::npos) {
        s += f;
        continue;
      }
      s += '"';
      for (char c : f) {
        if (c == '"') s += '"';
        s += c;
      }
      s += '"';
    }
    s += '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Common {
  std::string format;
  std::string out_path;
};

struct Sampling {
  std::string measure = "polar";
  int quad = 128;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 1;

  SamplingPlan plan() const {
    if (mc_samples > 0) return SamplingPlan::monte_carlo(mc_samples, seed);
    return SamplingPlan::quadrature(quad);
  }

  MeasureKind kind() const {
    auto k = parse_measure(measure);
    if (!k) throw UsageError("unknown measure '" + measure + "' (equatorial|polar)");
    return *k;
  }
};

void add_common(CLI::App* app, Common& c, const std::string& default_format) {
  c.format = default_format;
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--out", c.out_path, "Write the report to FILE instead of stdout");
}

void add_sampling(CLI::App* app, Sampling& s) {
  app->add_option("--measure", s.measure, "Averaging measure: equatorial|polar")
      ->check(CLI::IsMember({"equatorial", "polar"}))
      ->capture_default_str();
  app->add_option("--quad", s.quad, "Gauss-Legendre order")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  app->add_option("--mc-samples", s.mc_samples, "Monte Carlo draws instead of quadrature (>= 1000)");
  app->add_option("--seed", s.seed, "Monte Carlo seed")->capture_default_str();
}

Json metadata() { return Json{{"tool", "qclone"}, {"version", QCLONE_VERSION}}; }

Json plan_json(const Sampling& s, MeasureKind kind) {
  Json j{{"measure", std::string(to_string(kind))}};
  if (s.mc_samples > 0) {
    j["method"] = "monte-carlo";
    j["samples"] = s.mc_samples;
    j["seed"] = s.seed;
  } else {
    j["method"] = "gauss-legendre";
    j["quadrature_order"] = s.quad;
  }
  return j;
}

std::optional<DecompositionCoeffs> try_decompose(const DensityMatrix& rho, const PureState& psi) {
  try {
    return orthogonal_decomposition(rho, psi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDecomposable) return std::nullopt;
    throw;
  }
}

Json decomposition_json(const std::optional<DecompositionCoeffs>& d) {
  if (!d) return nullptr;
  return Json{{"f0_sq", d->f0_sq},
              {"f2_sq", d->f2_sq},
              {"scaling_factor", scaling_factor(*d)},
              {"residual", d->residual}};
}

std::optional<std::string> averaging_note(const Machine& m) {
  if (m.kind != MachineKind::TwoOp) return std::nullopt;
  const double r = std::remainder(m.phi - 1.5 * kPi, 2.0 * kPi);
  if (std::abs(r) > 1e-6) return std::nullopt;
  return "phi = 3pi/2: the clones are not equivalent; their polar averages are 2/3 and 1/3 "
         "(only the mean of the two is 1/2)";
}

Json stats_json(const FidelityStats& st) {
  return Json{{"mean_a", st.mean_a},
              {"mean_b", st.mean_b},
              {"var_a", st.var_a},
              {"var_b", st.var_b},
              {"correlation", opt(st.correlation)}};
}

// ---------------------------------------------------------------------------

struct RunArgs {
  Common common;
  Sampling sampling;
  std::string machine;
  double theta = 0.0;
  std::optional<double> phi;
  bool deg = false;
  bool averages = false;
};

std::string cmd_run(const RunArgs& a) {
  const double scale = a.deg ? kPi / 180.0 : 1.0;
  if (a.machine == "two-op" && !a.phi) throw UsageError("two-op requires --phi");
  const auto machine = parse_machine(a.machine, a.phi.value_or(0.0) * scale);
  if (!machine) throw UsageError("unknown machine '" + a.machine + "' (one-op|two-op|bh|pc)");
  const double theta = a.theta * scale;

  const PureState psi = equatorial_qubit(theta);
  const CloneOutput o = clone(*machine, psi);
  const auto f = pointwise_fidelities(*machine, theta);
  const auto dec = try_decompose(o.clone_a, psi);
  const auto orig = o.original_channel ? try_decompose(*o.original_channel, psi) : std::nullopt;
  const auto anc = o.ancilla ? try_decompose(*o.ancilla, psi) : std::nullopt;

  std::optional<FidelityStats> stats;
  if (a.averages) stats = average_fidelity(*machine, a.sampling.kind(), a.sampling.plan());
  const auto note = averaging_note(*machine);

  if (a.common.format == "json") {
    Json j{{"command", "run"}, {"metadata", metadata()}};
    j["machine"] = std::string(machine->name());
    j["theta"] = a.theta;
    j["phi"] = a.phi ? Json(*a.phi) : Json(nullptr);
    j["units"] = a.deg ? "degrees" : "radians";
    j["clone_wires"] = {o.clone_a_wire, o.clone_b_wire};
    j["fidelity_a"] = f.a;
    j["fidelity_b"] = f.b;
    j["fidelity_original"] = opt(f.original);
    j["decomposition"] = decomposition_json(dec);
    j["original_decomposition"] = decomposition_json(orig);
    j["ancilla_decomposition"] = decomposition_json(anc);
    Json amps = Json::array();
    for (const Complex& c : o.joint.amplitudes()) amps.push_back({c.real(), c.imag()});
    j["joint_state"] = amps;
    if (stats) {
      j["averages"] = stats_json(*stats);
      j["averages"]["plan"] = plan_json(a.sampling, stats->measure);
    }
    if (note) j["note"] = *note;
    return j.dump(2) + "\n";
  }

  std::vector<std::string> header{"machine",   "theta",         "phi",        "fidelity_a",
                                  "fidelity_b", "fidelity_original", "f0_sq", "f2_sq",
                                  "scaling_factor", "original_f0_sq", "original_f2_sq",
                                  "ancilla_f0_sq", "ancilla_f2_sq"};
  std::vector<std::string> row{std::string(machine->name()),
                               num(a.theta),
                               num(a.phi),
                               num(f.a),
                               num(f.b),
                               num(f.original),
                               dec ? num(dec->f0_sq) : "",
                               dec ? num(dec->f2_sq) : "",
                               dec ? num(scaling_factor(*dec)) : "",
                               orig ? num(orig->f0_sq) : "",
                               orig ? num(orig->f2_sq) : "",
                               anc ? num(anc->f0_sq) : "",
                               anc ? num(anc->f2_sq) : ""};
  if (stats) {
    for (const char* h : {"mean_a", "mean_b", "var_a", "var_b", "correlation"}) header.push_back(h);
    for (auto v : {stats->mean_a, stats->mean_b, stats->var_a, stats->var_b}) row.push_back(num(v));
    row.push_back(num(stats->correlation));
  }
  if (note) {
    header.push_back("note");
    row.push_back(*note);
  }
  Csv csv(header);
  csv.add(row);
  return csv.str();
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  Common common;
  Sampling sampling;
  std::string machine;
  std::string param = "phi";
  double from = 0.0;
  double to = 2.0 * kPi;
  int steps = 64;
  std::optional<double> phi;
  bool deg = false;
};

std::string cmd_sweep(const SweepArgs& a) {
  if (a.steps < 2) throw UsageError("--steps must be at least 2");
  const double scale = a.deg ? kPi / 180.0 : 1.0;
  if (!parse_machine(a.machine)) {
    throw UsageError("unknown machine '" + a.machine + "' (one-op|two-op|bh|pc)");
  }
  const bool over_phi = a.param == "phi";
  if (!over_phi && a.machine == "two-op" && !a.phi) {
    throw UsageError("a theta sweep of two-op requires --phi");
  }
  const MeasureKind kind = a.sampling.kind();
  const SamplingPlan plan = a.sampling.plan();

  std::vector<std::string> header =
      over_phi ? std::vector<std::string>{"param", "mean_a", "mean_b", "var_a", "var_b",
                                          "correlation"}
               : std::vector<std::string>{"param", "fidelity_a", "fidelity_b",
                                          "fidelity_original"};
  Csv csv(header);
  Json rows = Json::array();
  for (int k = 0; k < a.steps; ++k) {
    const double p = a.from + (a.to - a.from) * k / (a.steps - 1);
    if (over_phi) {
      const Machine m = *parse_machine(a.machine, p * scale);
      const FidelityStats st = average_fidelity(m, kind, plan);
      csv.add({num(p), num(st.mean_a), num(st.mean_b), num(st.var_a), num(st.var_b),
               num(st.correlation)});
      Json r{{"param", p}};
      r.update(stats_json(st));
      rows.push_back(r);
    } else {
      const Machine m = *parse_machine(a.machine, a.phi.value_or(0.0) * scale);
      const auto f = pointwise_fidelities(m, p * scale);
      csv.add({num(p), num(f.a), num(f.b), num(f.original)});
      rows.push_back(Json{{"param", p},
                          {"fidelity_a", f.a},
                          {"fidelity_b", f.b},
                          {"fidelity_original", opt(f.original)}});
    }
  }
  if (a.common.format == "csv") return csv.str();
  Json meta = metadata();
  meta["machine"] = a.machine;
  meta["param"] = a.param;
  meta["units"] = a.deg ? "degrees" : "radians";
  if (over_phi) meta["plan"] = plan_json(a.sampling, kind);
  return Json{{"command", "sweep"}, {"metadata", meta}, {"rows", rows}}.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  Common common;
  std::vector<double> coeffs;
  std::string preset;
  bool normalize = false;
};

std::string cmd_solve_prep(const SolveArgs& a) {
  std::array<double, 4> c{};
  if (!a.preset.empty()) {
    if (!a.coeffs.empty()) throw UsageError("give either --coeffs or --machine, not both");
    const PureState p = a.preset == "bh" ? bh_prep() : pc_prep();
    for (std::size_t i = 0; i < 4; ++i) c[i] = p[i].real();
  } else {
    if (a.coeffs.size() != 4) throw UsageError("--coeffs needs exactly four values");
    std::copy(a.coeffs.begin(), a.coeffs.end(), c.begin());
  }
  const PrepCoeffs coeffs = a.normalize ? PrepCoeffs::normalized(c) : PrepCoeffs(c);
  const auto branches = closed_form_cos_squared(coeffs);
  const auto sols = solve_prep_angles(coeffs);
  const auto deg = [](double rad) { return rad * 180.0 / kPi; };

  if (a.common.format == "csv") {
    Csv csv({"theta1_deg", "theta2_deg", "theta3_deg", "theta1_rad", "theta2_rad", "theta3_rad",
             "residual", "fallback"});
    for (const auto& s : sols) {
      csv.add({num(deg(s.angles.theta1)), num(deg(s.angles.theta2)), num(deg(s.angles.theta3)),
               num(s.angles.theta1), num(s.angles.theta2), num(s.angles.theta3), num(s.residual),
               s.from_fallback ? "true" : "false"});
    }
    return csv.str();
  }
  Json j{{"command", "solve-prep"}, {"metadata", metadata()}};
  j["coeffs"] = {coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
  Json br = Json::array();
  for (const auto& b : branches) {
    Json x{{"sign", b.sign}, {"degenerate", b.degenerate}};
    if (!b.degenerate) {
      x["cos2_theta1"] = b.cos2_theta1;
      x["cos2_theta2"] = b.cos2_theta2;
      x["cos2_theta3"] = b.cos2_theta3;
    }
    br.push_back(x);
  }
  j["closed_form"] = br;
  Json out = Json::array();
  for (const auto& s : sols) {
    out.push_back(Json{
        {"theta1_deg", deg(s.angles.theta1)},
        {"theta2_deg", deg(s.angles.theta2)},
        {"theta3_deg", deg(s.angles.theta3)},
        {"theta_rad", {s.angles.theta1, s.angles.theta2, s.angles.theta3}},
        {"degmin",
         {to_degmin(deg(s.angles.theta1)).to_string(), to_degmin(deg(s.angles.theta2)).to_string(),
          to_degmin(deg(s.angles.theta3)).to_string()}},
        {"residual", s.residual},
        {"fallback", s.from_fallback}});
  }
  j["solutions"] = out;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
  Common common;
  int starts = 100;
  std::uint64_t seed = 20260101;
  bool fix_z = false;
};

std::string cmd_optimize(const OptimizeArgs& a) {
  PcOptimizeOptions o;
  o.random_starts = a.starts;
  o.seed = a.seed;
  o.fix_z_zero = a.fix_z;
  const PcSolution s = pc_optimize(o);
  const double f2 = s.y * s.y + s.z * s.z;
  if (a.common.format == "csv") {
    Csv csv({"x", "y", "z", "f0_sq", "f2_sq", "constraint_residual", "starts", "starts_converged",
             "starts_at_best"});
    csv.add({num(s.x), num(s.y), num(s.z), num(s.f0_sq), num(f2), num(s.constraint_residual),
             std::to_string(s.starts), std::to_string(s.starts_converged),
             std::to_string(s.starts_at_best)});
    return csv.str();
  }
  Json meta = metadata();
  meta["seed"] = a.seed;
  meta["fix_z"] = a.fix_z;
  return Json{{"command", "optimize-pc"},
              {"metadata", meta},
              {"x", s.x},
              {"y", s.y},
              {"z", s.z},
              {"f0_sq", s.f0_sq},
              {"f2_sq", f2},
              {"constraint_residual", s.constraint_residual},
              {"starts", s.starts},
              {"starts_converged", s.starts_converged},
              {"starts_at_best", s.starts_at_best}}
             .dump(2) +
         "\n";
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  Common common;
  std::vector<int> perm;
  std::string forms;
};

std::string cmd_synth(const SynthArgs& a) {
  if (a.perm.empty() == a.forms.empty()) throw UsageError("give exactly one of --perm or --forms");
  const BasisBijection bij =
      a.perm.empty() ? parse_affine_forms(a.forms) : BasisBijection::from_images(a.perm);
  std::array<std::string, 3> anf;
  for (int k = 0; k < 3; ++k) anf[static_cast<std::size_t>(k)] = anf_of(bij, k).to_string();
  const Circuit c = synthesize_cnots(bij);
  const std::string product = format_operator_product(c);

  if (a.common.format == "csv") {
    std::string images;
    for (int v : bij.images()) images += (images.empty() ? "" : " ") + std::to_string(v);
    Csv csv({"images", "p", "q", "r", "circuit", "cnot_count"});
    csv.add({images, anf[0], anf[1], anf[2], product, std::to_string(c.cnot_count())});
    return csv.str();
  }
  return Json{{"command", "synth"},
              {"metadata", metadata()},
              {"images", bij.images()},
              {"anf", anf},
              {"forms", format_affine_forms(bij)},
              {"circuit", product},
              {"sequence", format_circuit(c)},
              {"cnot_count", c.cnot_count()}}
             .dump(2) +
         "\n";
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string target;
  std::optional<int> row;
};

struct CheckLine {
  Json json;
  std::vector<std::string> csv;  // suite,row,check,passed,value,tolerance,detail
  bool passed = false;
};

CheckLine make_line(const std::string& suite, std::optional<int> row, const std::string& check,
                    bool passed, double value, double tol, const std::string& detail,
                    Json extra = Json::object()) {
  CheckLine l;
  l.passed = passed;
  l.json = Json{{"suite", suite}};
  if (row) l.json["row"] = *row;
  l.json["check"] = check;
  l.json["passed"] = passed;
  l.json["value"] = value;
  l.json["tolerance"] = tol;
  if (!detail.empty()) l.json["detail"] = detail;
  for (auto& [k, v] : extra.items()) l.json[k] = v;
  l.csv = {suite, row ? std::to_string(*row) : "", check, passed ? "true" : "false", num(value),
           num(tol), detail};
  return l;
}

std::vector<CheckLine> table2_lines(const RowReport& r, const Table2Row& row) {
  std::vector<CheckLine> lines;
  const auto dm = [](double rad) { return to_degmin(rad * 180.0 / kPi).to_string(); };
  Json printed = Json::array();
  for (const auto& d : row.angles) printed.push_back(d.to_string());
  lines.push_back(make_line(
      "table2", r.index, "angles", r.angles_ok, r.angle_error_deg, kTable2AngleTolDeg,
      "solved " + dm(r.solved.theta1) + " " + dm(r.solved.theta2) + " " + dm(r.solved.theta3),
      Json{{"pattern", row.pattern_string()},
           {"printed", printed},
           {"solved", {dm(r.solved.theta1), dm(r.solved.theta2), dm(r.solved.theta3)}},
           {"solved_rad", {r.solved.theta1, r.solved.theta2, r.solved.theta3}}}));

  Json fid = Json::array();
  Json syn = Json::array();
  std::string fid_detail, syn_detail;
  for (const auto& c : r.circuits) {
    Json f{{"circuit", c.circuit}, {"error", c.fidelity_error}, {"passed", c.fidelity_ok}};
    Json s{{"circuit", c.circuit},
           {"form", c.output_form},
           {"synthesized", c.synthesized},
           {"passed", c.synthesis_ok}};
    if (c.replacement) {
      const Json rep{{"circuit", *c.replacement}, {"clones", *c.replacement_ok}};
      f["replacement"] = rep;
      s["replacement"] = rep;
      const std::string msg = c.circuit + " -> " + *c.replacement;
      if (!c.fidelity_ok) fid_detail += (fid_detail.empty() ? "" : "; ") + msg;
      if (!c.synthesis_ok) syn_detail += (syn_detail.empty() ? "" : "; ") + msg;
    }
    fid.push_back(f);
    syn.push_back(s);
  }
  lines.push_back(make_line(
      "table2", r.index, "fidelity", r.fidelity_ok(),
      std::max(r.circuits[0].fidelity_error, r.circuits[1].fidelity_error), kTable2FidelityTol,
      fid_detail, Json{{"branch_flip", r.branch_flip}, {"circuits", fid}}));
  lines.push_back(
      make_line("table2", r.index, "swap", r.swap_ok, r.swap_error, kTable2SwapTol, ""));
  lines.push_back(make_line("table2", r.index, "synthesis", r.synthesis_ok(),
                            r.synthesis_ok() ? 0.0 : 1.0, 0.0, syn_detail,
                            Json{{"circuits", syn}}));
  return lines;
}

std::pair<std::string, bool> cmd_verify(const VerifyArgs& a) {
  if (a.row && a.target != "table2") throw UsageError("--row only applies to table2");
  std::vector<CheckLine> lines;
  if (a.target == "table2" || a.target == "all") {
    if (a.row) {
      const Table2Row& row = table2_row(*a.row);
      for (auto& l : table2_lines(verify_table2(row), row)) lines.push_back(std::move(l));
    } else {
      for (const auto& row : table2_rows()) {
        for (auto& l : table2_lines(verify_table2(row), row)) lines.push_back(std::move(l));
      }
    }
  }
  if (a.target == "invariants" || a.target == "all") {
    for (const auto& c : run_invariants()) {
      lines.push_back(
          make_line("invariants", std::nullopt, c.name, c.passed, c.value, c.tolerance, c.detail));
    }
  }
  int failed = 0;
  for (const auto& l : lines) failed += l.passed ? 0 : 1;

  if (a.common.format == "csv") {
    Csv csv({"suite", "row", "check", "passed", "value", "tolerance", "detail"});
    for (const auto& l : lines) csv.add(l.csv);
    return {csv.str(), failed == 0};
  }
  std::string s;
  for (const auto& l : lines) s += l.json.dump() + "\n";
  Json summary{{"summary", true},
               {"target", a.target},
               {"checks", lines.size()},
               {"failed", failed},
               {"passed", failed == 0},
               {"version", QCLONE_VERSION}};
  s += summary.dump() + "\n";
  return {s, failed == 0};
}

// ---------------------------------------------------------------------------

std::string cmd_constants(const Common& c) {
  const auto items = angle_constant_check();
  if (c.format == "csv") {
    Csv csv({"expression", "printed", "actual_deg", "actual", "deviation_deg", "exact",
             "within_tolerance"});
    for (const auto& it : items) {
      csv.add({it.expression, it.printed.to_string(), num(it.actual_deg),
               to_degmin(it.actual_deg).to_string(), num(it.deviation_deg),
               it.exact ? "true" : "false", it.within_tolerance ? "true" : "false"});
    }
    return csv.str();
  }
  Json arr = Json::array();
  for (const auto& it : items) {
    arr.push_back(Json{{"expression", it.expression},
                       {"printed", it.printed.to_string()},
                       {"actual_deg", it.actual_deg},
                       {"actual", to_degmin(it.actual_deg).to_string()},
                       {"deviation_deg", it.deviation_deg},
                       {"exact", it.exact},
                       {"within_tolerance", it.within_tolerance}});
  }
  return Json{{"command", "constants"}, {"metadata", metadata()}, {"constants", arr}}.dump(2) +
         "\n";
}

bool is_usage_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::WrongArity:
    case ErrorCode::ZeroVector:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::CapacityExceeded:
    case ErrorCode::InvalidState:
    case ErrorCode::SameWire:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum cloning-machine workbench", "qclone"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(QCLONE_VERSION));

  RunArgs run_a;
  auto* run = app.add_subcommand("run", "Clone one equatorial input and report fidelities");
  run->add_option("machine", run_a.machine, "one-op | two-op | bh | pc")->required();
  run->add_option("--theta", run_a.theta, "Input angle: cos(theta)|0> + sin(theta)|1>")->required();
  run->add_option("--phi", run_a.phi, "Blank-qubit rotation of two-op");
  run->add_flag("--deg", run_a.deg, "Angles in degrees");
  run->add_flag("--averages", run_a.averages, "Also report averaged fidelities");
  add_sampling(run, run_a.sampling);
  add_common(run, run_a.common, "json");

  SweepArgs sweep_a;
  auto* sweep = app.add_subcommand("sweep", "Tabulate fidelities over phi or theta");
  sweep->add_option("machine", sweep_a.machine, "one-op | two-op | bh | pc")->required();
  sweep->add_option("--param", sweep_a.param, "phi (averaged) or theta (pointwise)")
      ->check(CLI::IsMember({"phi", "theta"}))
      ->capture_default_str();
  sweep->add_option("--from", sweep_a.from)->capture_default_str();
  sweep->add_option("--to", sweep_a.to)->capture_default_str();
  sweep->add_option("--steps", sweep_a.steps)->capture_default_str();
  sweep->add_option("--phi", sweep_a.phi, "Fixed phi for a theta sweep of two-op");
  sweep->add_flag("--deg", sweep_a.deg, "Angles in degrees");
  add_sampling(sweep, sweep_a.sampling);
  add_common(sweep, sweep_a.common, "csv");

  SolveArgs solve_a;
  auto* solve = app.add_subcommand("solve-prep", "Rotation angles preparing (C1, C2, C3, C4)");
  solve->add_option("--coeffs", solve_a.coeffs, "C1,C2,C3,C4")->delimiter(',');
  solve->add_option("--machine", solve_a.preset, "Use the bh or pc preparation")
      ->check(CLI::IsMember({"bh", "pc"}));
  solve->add_flag("--normalize", solve_a.normalize, "Rescale the coefficients to unit norm");
  add_common(solve, solve_a.common, "json");

  OptimizeArgs opt_a;
  auto* optimize = app.add_subcommand("optimize-pc", "Solve the phase-covariant design system");
  optimize->add_option("--starts", opt_a.starts, "Random feasible starts")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  optimize->add_option("--seed", opt_a.seed)->capture_default_str();
  optimize->add_flag("--fix-z", opt_a.fix_z, "Pin z = 0");
  add_common(optimize, opt_a.common, "json");

  SynthArgs synth_a;
  auto* synth = app.add_subcommand("synth", "CNOT circuit for a 3-bit affine permutation");
  synth->add_option("--perm", synth_a.perm, "Images of 0..7")->delimiter(',');
  synth->add_option("--forms", synth_a.forms, "Output forms, e.g. \"x^y^z, y, z\"");
  add_common(synth, synth_a.common, "json");

  VerifyArgs verify_a;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("target", verify_a.target, "table2 | invariants | all")
      ->required()
      ->check(CLI::IsMember({"table2", "invariants", "all"}));
  verify->add_option("--row", verify_a.row, "Single table2 row")->check(CLI::Range(1, 12));
  add_common(verify, verify_a.common, "json");

  Common const_a;
  auto* constants = app.add_subcommand("constants", "Check the arccos angle shorthands");
  add_common(constants, const_a, "json");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0 after printing; real errors are usage errors.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const Common* common = nullptr;
  std::string text;
  int code = kExitOk;
  try {
    if (run->parsed()) {
      common = &run_a.common;
      text = cmd_run(run_a);
    } else if (sweep->parsed()) {
      common = &sweep_a.common;
      text = cmd_sweep(sweep_a);
    } else if (solve->parsed()) {
      common = &solve_a.common;
      text = cmd_solve_prep(solve_a);
    } else if (optimize->parsed()) {
      common = &opt_a.common;
      text = cmd_optimize(opt_a);
    } else if (synth->parsed()) {
      common = &synth_a.common;
      text = cmd_synth(synth_a);
    } else if (verify->parsed()) {
      common = &verify_a.common;
      auto [t, ok] = cmd_verify(verify_a);
      text = std::move(t);
      code = ok ? kExitOk : kExitFailure;
    } else {
      common = &const_a;
      text = cmd_constants(const_a);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_usage_code(e.code()) ? kExitUsage : kExitFailure;
  }

  if (!common->out_path.empty()) {
    std::ofstream f(common->out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << common->out_path << "\n";
      return kExitUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace qclone::cli
