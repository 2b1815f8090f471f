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

#include "qclone/machines.hpp"

#include <cmath>

namespace qclone {
namespace {

void require_single_qubit(const PureState& psi0) {
  if (psi0.n_qubits() != 1) {
    throw Error(ErrorCode::WrongArity, "cloning machines take a 1-qubit input");
  }
}

CloneOutput assemble(PureState joint, int wire_a, int wire_b, bool three_qubit,
                     std::optional<int> ancilla_wire) {
  DensityMatrix a = reduced_state(joint, wire_a);
  DensityMatrix b = reduced_state(joint, wire_b);
  std::optional<DensityMatrix> original;
  std::optional<DensityMatrix> ancilla;
  if (three_qubit) original = reduced_state(joint, 0);
  if (ancilla_wire) ancilla = reduced_state(joint, *ancilla_wire);
  return CloneOutput{std::move(joint), std::move(a),       std::move(b),
                     std::move(original), std::move(ancilla), wire_a, wire_b};
}

}  // namespace

std::string_view Machine::name() const noexcept {
  switch (kind) {
    case MachineKind::OneOp: return "one-op";
    case MachineKind::TwoOp: return "two-op";
    case MachineKind::BuzekHillery: return "bh";
    case MachineKind::PhaseCovariant: return "pc";
  }
  return "unknown";
}

int Machine::n_qubits() const noexcept {
  return kind == MachineKind::OneOp || kind == MachineKind::TwoOp ? 2 : 3;
}

std::optional<Machine> parse_machine(std::string_view name, double phi) {
  if (name == "one-op") return Machine::one_op();
  if (name == "two-op") return Machine::two_op(phi);
  if (name == "bh") return Machine::bh();
  if (name == "pc") return Machine::pc();
  return std::nullopt;
}

CloneOutput one_op_clone(const PureState& psi0) {
  require_single_qubit(psi0);
  const PureState joint = apply_cnot(tensor(psi0, PureState::basis(1, 0)), CnotOp{0, 1});
  return assemble(joint, 0, 1, false, std::nullopt);
}

CloneOutput two_op_clone(const PureState& psi0, double phi) {
  require_single_qubit(psi0);
  const PureState blank = apply_rotation(PureState::basis(1, 0), RotationOp{0, phi});
  const PureState joint = apply_cnot(tensor(psi0, blank), CnotOp{0, 1});
  return assemble(joint, 0, 1, false, std::nullopt);
}

PureState bh_prep() {
  const double f2 = std::sqrt(1.0 / 6.0);
  const double head = std::sqrt(5.0 / 6.0 - 1.0 / 6.0);
  return PureState::adopt({head, f2, f2, 0.0});
}

PureState pc_prep() {
  const double r8 = 1.0 / std::sqrt(8.0);
  return PureState::adopt({0.5 + r8, r8, r8, 0.5 - r8});
}

Circuit bh_cloning_circuit() {
  return Circuit(3).cnot(1, 0).cnot(0, 2).cnot(2, 1);
}

Circuit pc_cloning_circuit() {
  return Circuit(3).cnot(0, 1).cnot(0, 2).cnot(1, 0).cnot(2, 0);
}

CloneOutput bh_clone(const PureState& psi0) {
  require_single_qubit(psi0);
  PureState joint = run(bh_cloning_circuit(), tensor(psi0, bh_prep()));
  return assemble(std::move(joint), 0, 1, true, 2);
}

CloneOutput pc_clone(const PureState& psi0) {
  require_single_qubit(psi0);
  PureState joint = run(pc_cloning_circuit(), tensor(psi0, pc_prep()));
  return assemble(std::move(joint), 1, 2, true, std::nullopt);
}

CloneOutput clone(const Machine& machine, const PureState& psi0) {
  switch (machine.kind) {
    case MachineKind::OneOp: return one_op_clone(psi0);
    case MachineKind::TwoOp: return two_op_clone(psi0, machine.phi);
    case MachineKind::BuzekHillery: return bh_clone(psi0);
    case MachineKind::PhaseCovariant: return pc_clone(psi0);
  }
  throw Error(ErrorCode::InvalidState, "unknown machine");
}

PointwiseFidelities pointwise_fidelities(const Machine& machine, double theta) {
  const PureState psi = equatorial_qubit(theta);
  const CloneOutput out = clone(machine, psi);
  PointwiseFidelities f{fidelity(psi, out.clone_a), fidelity(psi, out.clone_b), std::nullopt};
  if (out.original_channel) f.original = fidelity(psi, *out.original_channel);
  return f;
}

DecompositionCoeffs orthogonal_decomposition(const DensityMatrix& rho, const PureState& psi0) {
  if (rho.n_qubits() != 1 || psi0.n_qubits() != 1) {
    throw Error(ErrorCode::WrongArity, "orthogonal decomposition is for single qubits");
  }
  const ComplexMatrix p0 = density_of(psi0).matrix();
  const ComplexMatrix p2 = density_of(orthogonal_state(psi0)).matrix();
  // Least squares in the Hilbert-Schmidt inner product: G f = b.
  auto hs = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.adjoint() * b).trace().real();
  };
  Eigen::Matrix2d gram;
  gram << hs(p0, p0), hs(p0, p2), hs(p2, p0), hs(p2, p2);
  const Eigen::Vector2d rhs(hs(p0, rho.matrix()), hs(p2, rho.matrix()));
  const Eigen::Vector2d f = gram.ldlt().solve(rhs);
  DecompositionCoeffs out{f(0), f(1), 0.0};
  out.residual = (rho.matrix() - f(0) * p0 - f(1) * p2).norm();
  if (out.residual > 1e-6) {
    throw Error(ErrorCode::NotDecomposable,
                "residual " + std::to_string(out.residual) +
                    ": state has coherence outside the psi0/psi2 basis");
  }
  return out;
}

double scaling_factor(const DecompositionCoeffs& coeffs) { return coeffs.f0_sq - coeffs.f2_sq; }

ComplexMatrix shrunk_state(const PureState& psi, double s) {
  const ComplexMatrix identity = ComplexMatrix::Identity(
      static_cast<Eigen::Index>(psi.dim()), static_cast<Eigen::Index>(psi.dim()));
  return s * density_of(psi).matrix() + ((1.0 - s) / 2.0) * identity;
}

}  // namespace qclone
