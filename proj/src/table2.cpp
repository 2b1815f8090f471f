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

#include "qclone/table2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qclone/errors.hpp"
#include "qclone/machines.hpp"

namespace qclone {

namespace {

constexpr double kPi = std::numbers::pi;

DegMin dm(int deg, int min) { return {deg < 0 ? -1 : 1, std::abs(deg), min}; }
DegMin neg(int deg, int min) { return {-1, deg, min}; }

std::vector<Table2Row> build_rows() {
  return {
      {1, {1, 2, 2, 4}, {dm(22, 30), dm(0, 0), dm(22, 30)},
       {"x^y^z, y, z", "x^y^z, z, y"}, {"P10P20", "P12P21P12P10P20"}},
      {2, {1, 2, 4, 2}, {dm(27, 20), dm(15, 0), dm(17, 40)},
       {"x^z, y, y^z", "x^z, y^z, y"}, {"P12P20", "P12P21P20"}},
      {3, {1, 4, 2, 2}, {dm(17, 40), dm(15, 0), dm(27, 20)},
       {"x^y, z, y^z", "x^y, y^z, z"}, {"P21P12P10", "P21P10"}},
      {4, {2, 1, 2, 4}, {dm(62, 40), dm(-15, 0), dm(17, 40)},
       {"x^~z, y, y^~z", "x^~z, y^~z, y"}, {"P12P~20", "P12P20P~21"}},
      {5, {2, 1, 4, 2}, {dm(67, 30), dm(0, 0), dm(22, 30)},
       {"x^y^~z, y, ~z", "x^y^~z, ~z, y"}, {"P10P~20", "P21P12P10P21P~20"}},
      {6, {2, 2, 1, 4}, {dm(17, 40), dm(-15, 0), dm(62, 40)},
       {"x^~y, z, ~y^z", "x^~y, ~y^z, z"}, {"P21P12P~10", "P10P~20"}},
      {7, {2, 2, 4, 1}, {neg(17, 40), dm(75, 0), neg(27, 20)},
       {"x^~y, ~z, y^z", "x^~y, y^z, ~z"}, {"P21P12P~10", "P~21P~10"}},
      {8, {2, 4, 1, 2}, {dm(22, 30), dm(0, 0), dm(67, 30)},
       {"x^~y^z, z, ~y", "x^~y^z, ~y, z"}, {"P12P21P12P~10P20", "P~10P20"}},
      {9, {2, 4, 2, 1}, {neg(27, 20), dm(75, 0), neg(17, 40)},
       {"x^~z, y^z, ~y", "x^~z, ~y, y^z"}, {"P12P~20P21", "P~12P~20"}},
      {10, {4, 2, 2, 1}, {dm(67, 30), dm(0, 0), dm(67, 30)},
       {"x^y^z, ~z, ~y", "x^y^z, ~y, ~z"}, {"P12P21P12P~10P~20", "P~10P~20"}},
      {11, {4, 2, 1, 2}, {dm(27, 20), dm(-15, 0), dm(72, 20)},
       {"x^z, ~y^z, ~y", "x^z, ~y, ~y^z"}, {"P~12P21P20", "P~12P20"}},
      {12, {4, 1, 2, 2}, {dm(72, 20), dm(-15, 0), dm(27, 20)},
       {"x^y, y^~z, ~z", "x^y, ~z, y^~z"}, {"P~21P10", "P~21P12P10"}},
  };
}

double to_deg(double rad) { return rad * 180.0 / kPi; }

double angle_distance_deg(const AngleTriple& solved, const std::array<DegMin, 3>& printed) {
  const std::array<double, 3> s{solved.theta1, solved.theta2, solved.theta3};
  double m = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = normalize_angle(s[i] - printed[i].value() * kPi / 180.0);
    m = std::max(m, std::abs(to_deg(d)));
  }
  return m;
}

PureState swap_wires_12(const PureState& psi) {
  std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t x = 0; x < 2; ++x) {
    std::swap(amps[x * 4 + 1], amps[x * 4 + 2]);
  }
  return PureState::adopt(std::move(amps));
}

struct Run {
  std::vector<PureState> outputs;
  double fidelity_error = 0.0;
};

Run run_circuit(const Circuit& flip, const Circuit& stage, const PureState& prep) {
  const double target = 0.5 + 1.0 / std::sqrt(8.0);
  const Circuit full = flip.then(stage);
  Run r;
  for (int k = 0; k < kTable2Inputs; ++k) {
    const PureState psi0 = equatorial_qubit(2.0 * kPi * k / kTable2Inputs);
    PureState out = run(full, tensor(psi0, prep));
    for (int w : {1, 2}) {
      r.fidelity_error =
          std::max(r.fidelity_error, std::abs(fidelity(psi0, reduced_state(out, w)) - target));
    }
    r.outputs.push_back(std::move(out));
  }
  return r;
}

}  // namespace

std::string DegMin::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%d°%02d′", (sign < 0 && (degrees || minutes)) ? "-" : "",
                degrees, minutes);
  return buf;
}

DegMin to_degmin(double degrees) {
  const long total = std::lround(std::abs(degrees) * 60.0);
  return {degrees < 0 && total != 0 ? -1 : 1, static_cast<int>(total / 60),
          static_cast<int>(total % 60)};
}

PrepCoeffs Table2Row::coeffs() const {
  const double x = 0.5 + 1.0 / std::sqrt(8.0);
  const double y = 1.0 / std::sqrt(8.0);
  const double z = 0.5 - 1.0 / std::sqrt(8.0);
  std::array<double, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    c[i] = pattern[i] == 1 ? x : pattern[i] == 4 ? z : y;
  }
  return PrepCoeffs(c);
}

std::string Table2Row::pattern_string() const {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ' ';
    s += "C" + std::to_string(pattern[i]);
  }
  return s;
}

const std::vector<Table2Row>& table2_rows() {
  static const std::vector<Table2Row> rows = build_rows();
  return rows;
}

const Table2Row& table2_row(int index) {
  const auto& rows = table2_rows();
  if (index < 1 || index > static_cast<int>(rows.size())) {
    throw Error(ErrorCode::IndexOutOfRange, "table2 rows are numbered 1..12");
  }
  return rows[static_cast<std::size_t>(index - 1)];
}

Circuit branch_flip_stage(const Table2Row& row) {
  const auto pos = [&](int label) {
    return static_cast<int>(std::find(row.pattern.begin(), row.pattern.end(), label) -
                            row.pattern.begin());
  };
  const int d = pos(1) ^ pos(4);
  Circuit c(3);
  if (d & 2) c.cnot(0, 1);
  if (d & 1) c.cnot(0, 2);
  return c;
}

RowReport verify_table2(const Table2Row& row) {
  RowReport rep;
  rep.index = row.index;

  const auto solutions = solve_prep_angles(row.coeffs());
  const auto best = std::min_element(
      solutions.begin(), solutions.end(), [&](const AngleSolution& a, const AngleSolution& b) {
        return angle_distance_deg(a.angles, row.angles) < angle_distance_deg(b.angles, row.angles);
      });
  rep.solved = best->angles;
  rep.angle_error_deg = angle_distance_deg(rep.solved, row.angles);
  rep.angles_ok = rep.angle_error_deg <= kTable2AngleTolDeg;

  const PureState prep = prep_state(rep.solved);
  const Circuit flip = branch_flip_stage(row);
  rep.branch_flip = format_operator_product(flip);

  std::array<Run, 2> runs;
  for (std::size_t k = 0; k < 2; ++k) {
    CircuitCheck& chk = rep.circuits[k];
    chk.circuit = row.circuits[k];
    chk.output_form = row.output_forms[k];
    const Circuit printed = parse_operator_product(row.circuits[k], 3);
    runs[k] = run_circuit(flip, printed, prep);
    chk.fidelity_error = runs[k].fidelity_error;
    chk.fidelity_ok = chk.fidelity_error <= kTable2FidelityTol;

    const Circuit synth = synthesize_cnots(parse_affine_forms(row.output_forms[k]));
    chk.synthesized = format_operator_product(synth);
    chk.synthesis_ok = bijection_of(synth) == bijection_of(printed);
    if (!chk.fidelity_ok || !chk.synthesis_ok) {
      chk.replacement = chk.synthesized;
      chk.replacement_ok = run_circuit(flip, synth, prep).fidelity_error <= kTable2FidelityTol;
    }
  }

  for (int i = 0; i < kTable2Inputs; ++i) {
    const auto& a = runs[0].outputs[static_cast<std::size_t>(i)];
    const auto& b = runs[1].outputs[static_cast<std::size_t>(i)];
    rep.swap_error = std::max(rep.swap_error, projector_distance(a, swap_wires_12(b)));
  }
  rep.swap_ok = rep.swap_error <= kTable2SwapTol;
  return rep;
}

std::vector<RowReport> verify_table2_all() {
  std::vector<RowReport> out;
  for (const auto& row : table2_rows()) out.push_back(verify_table2(row));
  return out;
}

std::vector<AngleConstant> angle_constant_check() {
  struct Item {
    const char* expr;
    DegMin printed;
    double value_rad;
  };
  const Item items[] = {
      {"arccos sqrt(1/2 + 1/sqrt8)", dm(22, 30), std::acos(std::sqrt(0.5 + 1.0 / std::sqrt(8.0)))},
      {"arccos (sqrt(2 + sqrt3) / 2)", dm(15, 0), std::acos(std::sqrt(2.0 + std::sqrt(3.0)) / 2.0)},
      {"arccos sqrt(1/2 + 1/sqrt6)", dm(17, 40), std::acos(std::sqrt(0.5 + 1.0 / std::sqrt(6.0)))},
      {"arccos sqrt((1 + 1/sqrt3) / 2)", dm(27, 20),
       std::acos(std::sqrt(0.5 * (1.0 + 1.0 / std::sqrt(3.0))))},
  };
  std::vector<AngleConstant> out;
  for (const auto& it : items) {
    AngleConstant c;
    c.expression = it.expr;
    c.printed = it.printed;
    c.actual_deg = to_deg(it.value_rad);
    c.deviation_deg = c.actual_deg - it.printed.value();
    c.exact = std::abs(c.deviation_deg) < 1e-9;
    c.within_tolerance = std::abs(c.deviation_deg) <= kTable2AngleTolDeg;
    out.push_back(c);
  }
  return out;
}

}  // namespace qclone
