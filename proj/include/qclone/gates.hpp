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

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qclone/qnum.hpp"

namespace qclone {

/// Azimuth of the real great circle; R(theta, pi/2) is a real rotation.
inline constexpr double kEquatorialPhi = std::numbers::pi / 2.0;

inline constexpr int kMaxUnitaryQubits = 12;

struct RotationOp {
  int wire = 0;
  double theta = 0.0;
  double phi = kEquatorialPhi;
};

/// target <- control XOR target, XOR 1 when `inverted`.
struct CnotOp {
  int control = 0;
  int target = 1;
  bool inverted = false;
};

/// sigma_index on one wire.
struct PauliOp {
  int index = 1;
  int wire = 0;
};

using GateOp = std::variant<RotationOp, CnotOp, PauliOp>;

/// Ordered gate list, applied first-to-last.
class Circuit {
 public:
  explicit Circuit(int n_qubits);
  Circuit(int n_qubits, std::vector<GateOp> ops);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<GateOp>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }

  Circuit& add(GateOp op);
  Circuit& cnot(int control, int target, bool inverted = false);
  Circuit& rotation(int wire, double theta, double phi = kEquatorialPhi);
  Circuit& pauli(int index, int wire);

  /// This circuit followed by `next`.
  Circuit then(const Circuit& next) const;

  /// True when every op is a CNOT or a sigma_1 (a basis permutation).
  bool is_classical() const noexcept;

  int cnot_count() const noexcept;

 private:
  void validate(const GateOp& op) const;

  int n_qubits_;
  std::vector<GateOp> ops_;
};

ComplexMatrix rotation_matrix(double theta, double phi = kEquatorialPhi);

PureState apply_rotation(const PureState& psi, const RotationOp& op);
PureState apply_cnot(const PureState& psi, const CnotOp& op);
PureState apply(const PureState& psi, const GateOp& op);
PureState run(const Circuit& circuit, const PureState& psi);

ComplexMatrix circuit_unitary(const Circuit& circuit);

/// Image of every basis index under a classical circuit. Throws
/// InvalidState when the circuit contains non-permutation gates.
std::vector<std::size_t> basis_permutation(const Circuit& circuit);

/// Whitespace-separated tokens applied left-to-right:
///   P(c,t)   CNOT          P!(c,t)  CNOT with inverted target
///   R(w,th)  R(th, pi/2)   R(w,th,ph) general rotation
///   X(w) Y(w) Z(w)         Pauli gates
std::string format_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text, int n_qubits);

/// Operator-product notation, read right-to-left like a product of operators:
/// "P12 P~20" applies P~20 first. A "~" in front of a wire digit is a bar:
/// sigma_1 on that wire immediately before the CNOT. So P1~2 is an inverted
/// CNOT, while P~12 complements the control, which stays complemented.
Circuit parse_operator_product(std::string_view text, int n_qubits);

/// Inverse of parse_operator_product for classical circuits. A lone sigma_1
/// that cannot be folded into the next CNOT on its wire prints as "X<w>".
std::string format_operator_product(const Circuit& circuit);

}  // namespace qclone
