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

#pragma once

// The twelve phase-covariant cloners obtained by permuting the prepared
// amplitudes, and their verification.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qclone/gates.hpp"
#include "qclone/prepsolver.hpp"
#include "qclone/synth.hpp"

namespace qclone {

/// Signed angle in whole degrees and arc-minutes, as printed.
struct DegMin {
  int sign = 1;
  int degrees = 0;
  int minutes = 0;

  double value() const noexcept { return sign * (degrees + minutes / 60.0); }
  std::string to_string() const;
};

/// Nearest whole arc-minute.
DegMin to_degmin(double degrees);

struct Table2Row {
  int index = 0;
  /// Which of C1, C2, C4 sits at |00>, |01>, |10>, |11> (C3 = C2).
  std::array<int, 4> pattern{};
  std::array<DegMin, 3> angles{};
  std::array<std::string, 2> output_forms;  // parse_affine_forms syntax
  std::array<std::string, 2> circuits;      // parse_operator_product syntax

  PrepCoeffs coeffs() const;
  std::string pattern_string() const;  // e.g. "C2 C1 C4 C2"
};

const std::vector<Table2Row>& table2_rows();

/// Throws IndexOutOfRange unless 1 <= index <= 12.
const Table2Row& table2_row(int index);

/// CNOTs from the original onto the prepared wires that exchange the C1 and
/// C4 amplitudes when the original is |1>; the printed circuits act after it.
Circuit branch_flip_stage(const Table2Row& row);

struct CircuitCheck {
  std::string circuit;
  std::string output_form;
  double fidelity_error = 0.0;  // max |F - (1/2 + 1/sqrt8)| over clones and inputs
  bool fidelity_ok = false;
  std::string synthesized;      // circuit emitted for the output form
  bool synthesis_ok = false;    // synthesized and printed circuits agree on all 8 states
  /// For a failing entry: the synthesized circuit, and whether it clones.
  std::optional<std::string> replacement;
  std::optional<bool> replacement_ok;
};

struct RowReport {
  int index = 0;
  AngleTriple solved;            // radians, the solution nearest the printed angles
  double angle_error_deg = 0.0;  // max deviation from the printed angles
  bool angles_ok = false;
  std::string branch_flip;
  std::array<CircuitCheck, 2> circuits;
  double swap_error = 0.0;  // projector distance after exchanging wires 1 and 2
  bool swap_ok = false;

  bool fidelity_ok() const noexcept { return circuits[0].fidelity_ok && circuits[1].fidelity_ok; }
  bool synthesis_ok() const noexcept {
    return circuits[0].synthesis_ok && circuits[1].synthesis_ok;
  }
  bool passed() const noexcept { return angles_ok && fidelity_ok() && swap_ok && synthesis_ok(); }
};

inline constexpr double kTable2AngleTolDeg = 0.2;
inline constexpr double kTable2FidelityTol = 1e-9;
inline constexpr double kTable2SwapTol = 1e-10;
inline constexpr int kTable2Inputs = 64;

RowReport verify_table2(const Table2Row& row);
std::vector<RowReport> verify_table2_all();

struct AngleConstant {
  std::string expression;
  DegMin printed;
  double actual_deg = 0.0;
  double deviation_deg = 0.0;
  bool exact = false;        // deviation below 1e-9 degrees
  bool within_tolerance = false;
};

/// The four arccos shorthands used for the printed angles.
std::vector<AngleConstant> angle_constant_check();

}  // namespace qclone
