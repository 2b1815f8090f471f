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

#include <optional>
#include <string>
#include <string_view>

#include "qclone/gates.hpp"
#include "qclone/qnum.hpp"

namespace qclone {

enum class MachineKind { OneOp, TwoOp, BuzekHillery, PhaseCovariant };

/// A cloning machine plus its free parameter (the ancilla rotation angle of
/// the two-operator machine; ignored by the others).
struct Machine {
  MachineKind kind = MachineKind::OneOp;
  double phi = 0.0;

  static Machine one_op() { return {MachineKind::OneOp, 0.0}; }
  static Machine two_op(double phi) { return {MachineKind::TwoOp, phi}; }
  static Machine bh() { return {MachineKind::BuzekHillery, 0.0}; }
  static Machine pc() { return {MachineKind::PhaseCovariant, 0.0}; }

  /// CLI name: one-op, two-op, bh, pc.
  std::string_view name() const noexcept;
  int n_qubits() const noexcept;
};

/// Parses a CLI machine name. Returns nullopt for unknown names.
std::optional<Machine> parse_machine(std::string_view name, double phi = 0.0);

/// Joint output state and its one-qubit marginals.
///
/// For the three-qubit machines `original_channel` is wire 0, where the
/// original qubit entered. For BH that wire is also clone_a and the third
/// wire is reported as `ancilla`; for PC the clones are the two prepared
/// wires and there is no separate ancilla.
struct CloneOutput {
  PureState joint;
  DensityMatrix clone_a;
  DensityMatrix clone_b;
  std::optional<DensityMatrix> original_channel;
  std::optional<DensityMatrix> ancilla;
  int clone_a_wire = 0;
  int clone_b_wire = 1;
};

CloneOutput one_op_clone(const PureState& psi0);
CloneOutput two_op_clone(const PureState& psi0, double phi);
CloneOutput bh_clone(const PureState& psi0);
CloneOutput pc_clone(const PureState& psi0);
CloneOutput clone(const Machine& machine, const PureState& psi0);

/// sqrt(f0^2 - f2^2)|00> + f2|01> + f2|10> with f0^2 = 5/6.
PureState bh_prep();

/// x|00> + y|01> + y|10> + z|11> at the phase-covariant optimum
/// (x, y, z) = (1/2 + 1/sqrt8, 1/sqrt8, 1/2 - 1/sqrt8).
PureState pc_prep();

/// Cloning stage of the BH machine on |psi0, prep>: P_{10}, then P_{02}, then P_{21}.
Circuit bh_cloning_circuit();

/// Cloning stage of the PC machine: a branch flip P_{01} P_{02} that
/// exchanges the x and z amplitudes of the prepared pair when the original is
/// |1>, followed by P_{10} P_{20}, which folds the parity back onto wire 0.
Circuit pc_cloning_circuit();

/// Fidelity of both clones (and the original wire, for three-qubit machines)
/// against the equatorial input cos(theta)|0> + sin(theta)|1>.
struct PointwiseFidelities {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> original;
};

PointwiseFidelities pointwise_fidelities(const Machine& machine, double theta);

/// rho = f0^2 |psi0><psi0| + f2^2 |psi2><psi2| with psi2 orthogonal to psi0.
struct DecompositionCoeffs {
  double f0_sq = 0.0;
  double f2_sq = 0.0;
  double residual = 0.0;  // Frobenius norm of what the two projectors miss
};

/// Throws NotDecomposable when the residual exceeds 1e-6.
DecompositionCoeffs orthogonal_decomposition(const DensityMatrix& rho, const PureState& psi0);

/// s = f0^2 - f2^2 in rho_out = s rho_in + (1 - s)/2 I.
double scaling_factor(const DecompositionCoeffs& coeffs);

/// s |psi><psi| + (1 - s)/2 I.
ComplexMatrix shrunk_state(const PureState& psi, double s);

}  // namespace qclone
