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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qclone/machines.hpp"
#include "support.hpp"

using namespace qclone;
using qtest::kPi;

namespace {

const double kPcF0 = 0.5 + 1.0 / std::sqrt(8.0);

Eigen::VectorXcd bh_prep_oracle() {
  Eigen::VectorXcd v(4);
  v << std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 6.0), std::sqrt(1.0 / 6.0), 0.0;
  return v;
}

Eigen::VectorXcd pc_prep_oracle() {
  const double r8 = 1.0 / std::sqrt(8.0);
  Eigen::VectorXcd v(4);
  v << 0.5 + r8, r8, r8, 0.5 - r8;
  return v;
}

// Dense joint outputs; matrices multiply right-to-left.
Eigen::VectorXcd bh_oracle(const PureState& psi) {
  const ComplexMatrix u = qtest::cnot_matrix(2, 1, 3) * qtest::cnot_matrix(0, 2, 3) *
                          qtest::cnot_matrix(1, 0, 3);
  return u * qtest::kron(qtest::vec(psi), bh_prep_oracle());
}

Eigen::VectorXcd pc_oracle(const PureState& psi) {
  const ComplexMatrix u = qtest::cnot_matrix(2, 0, 3) * qtest::cnot_matrix(1, 0, 3) *
                          qtest::cnot_matrix(0, 2, 3) * qtest::cnot_matrix(0, 1, 3);
  return u * qtest::kron(qtest::vec(psi), pc_prep_oracle());
}

double fid(const PureState& psi, const ComplexMatrix& rho) {
  return (qtest::vec(psi).adjoint() * rho * qtest::vec(psi))(0).real();
}

}  // namespace

TEST_CASE("machine names") {
  CHECK(parse_machine("bh")->kind == MachineKind::BuzekHillery);
  CHECK(parse_machine("two-op", 0.3)->phi == 0.3);
  CHECK_FALSE(parse_machine("bogus").has_value());
  for (const Machine m : {Machine::one_op(), Machine::two_op(0.1), Machine::bh(), Machine::pc()}) {
    CHECK(parse_machine(m.name())->kind == m.kind);
  }
  CHECK(Machine::bh().n_qubits() == 3);
  CHECK(Machine::one_op().n_qubits() == 2);
}

TEST_CASE("one-op machine") {
  const CloneOutput basis = one_op_clone(PureState::basis(1, 0));
  CHECK(fidelity(PureState::basis(1, 0), basis.clone_a) == doctest::Approx(1.0).epsilon(1e-15));
  for (int k = 0; k <= 32; ++k) {
    const double th = 2 * kPi * k / 32;
    const PureState psi = equatorial_qubit(th);
    const CloneOutput out = one_op_clone(psi);
    const double c = std::cos(th), s = std::sin(th);
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = c * c;
    diag(1, 1) = s * s;
    CHECK(qtest::max_abs(out.clone_a.matrix() - diag) < 1e-12);
    CHECK(qtest::max_abs(out.clone_b.matrix() - diag) < 1e-12);
    CHECK(std::abs(fidelity(psi, out.clone_a) - (std::pow(c, 4) + std::pow(s, 4))) < 1e-12);
  }
  CHECK(fidelity(equatorial_qubit(kPi / 4), one_op_clone(equatorial_qubit(kPi / 4)).clone_a) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(one_op_clone(PureState::basis(2, 0)), Error);
}

TEST_CASE("two-op reduced densities match the closed forms") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 300; ++trial) {
    const double th = angle(rng), ph = angle(rng);
    const double a = std::cos(th), b = std::sin(th), c = std::cos(ph), s = std::sin(ph);
    const CloneOutput out = two_op_clone(equatorial_qubit(th), ph);
    ComplexMatrix ra(2, 2), rb(2, 2);
    ra << a * a, 2 * a * b * c * s, 2 * a * b * c * s, b * b;
    rb << a * a * c * c + b * b * s * s, c * s, c * s, a * a * s * s + b * b * c * c;
    CHECK(qtest::max_abs(out.clone_a.matrix() - ra) < 1e-12);
    CHECK(qtest::max_abs(out.clone_b.matrix() - rb) < 1e-12);
  }
}

TEST_CASE("two-op special angles") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = qtest::haar(rng);
    const CloneOutput zero = two_op_clone(psi, 0.0);
    const CloneOutput ref = one_op_clone(psi);
    CHECK(qtest::max_abs(qtest::vec(zero.joint) - qtest::vec(ref.joint)) < 1e-15);
  }
  for (int k = 0; k < 64; ++k) {
    const double th = 2 * kPi * k / 64;
    const PureState psi = equatorial_qubit(th);
    const CloneOutput sep = two_op_clone(psi, kPi / 4);
    const PureState product = tensor(psi, equatorial_qubit(kPi / 4));
    CHECK(projector_distance(sep.joint, product) < 1e-10);
    CHECK(fidelity(psi, sep.clone_a) == doctest::Approx(1.0).epsilon(1e-12));

    const CloneOutput anti = two_op_clone(psi, kPi / 2);
    const double c2s2 = std::pow(std::cos(th) * std::sin(th), 2);
    CHECK(std::abs(fidelity(psi, anti.clone_a) - (1 - 2 * c2s2)) < 1e-12);
    CHECK(std::abs(fidelity(psi, anti.clone_b) - 2 * c2s2) < 1e-12);
  }
}

TEST_CASE("bh_prep and pc_prep coefficients") {
  CHECK(qtest::max_abs(qtest::vec(bh_prep()) - bh_prep_oracle()) < 1e-15);
  CHECK(std::abs(bh_prep()[0] - 0.816496580927726) < 1e-12);
  CHECK(bh_prep()[3] == Complex(0.0));
  CHECK(std::abs(bh_prep().norm_squared() - 1) < 1e-15);
  CHECK(qtest::max_abs(qtest::vec(pc_prep()) - pc_prep_oracle()) < 1e-15);
  CHECK(std::abs(pc_prep().norm_squared() - 1) < 1e-15);
  CHECK(pc_prep()[1] == pc_prep()[2]);
}

TEST_CASE("BH machine is universal") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const PureState psi = qtest::haar(rng);
    const CloneOutput out = bh_clone(psi);
    const Eigen::VectorXcd joint = bh_oracle(psi);
    CHECK(qtest::max_abs(qtest::vec(out.joint) - joint) < 1e-12);
    CHECK(std::abs(fidelity(psi, out.clone_a) - 5.0 / 6.0) < 1e-10);
    CHECK(std::abs(fidelity(psi, out.clone_b) - 5.0 / 6.0) < 1e-10);
    CHECK(qtest::max_abs(out.clone_a.matrix() - out.clone_b.matrix()) < 1e-10);
    REQUIRE(out.ancilla.has_value());
    CHECK(qtest::max_abs(out.ancilla->matrix() - qtest::reduce(joint, 2, 3)) < 1e-12);
    const ComplexMatrix shrunk = shrunk_state(psi, 2.0 / 3.0);
    CHECK(frobenius_distance(out.clone_a.matrix(), shrunk) < 1e-9);
  }
  const CloneOutput zero = bh_clone(PureState::basis(1, 0));
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 5.0 / 6.0;
  expect(1, 1) = 1.0 / 6.0;
  CHECK(qtest::max_abs(zero.clone_a.matrix() - expect) < 1e-12);
  CHECK(zero.clone_a_wire == 0);
  CHECK(zero.clone_b_wire == 1);
}

TEST_CASE("PC machine on the equator") {
  for (int k = 0; k < 256; ++k) {
    const double th = 2 * kPi * k / 256;
    const PureState psi = equatorial_qubit(th);
    const CloneOutput out = pc_clone(psi);
    const Eigen::VectorXcd joint = pc_oracle(psi);
    CHECK(qtest::max_abs(qtest::vec(out.joint) - joint) < 1e-12);
    CHECK(std::abs(fid(psi, qtest::reduce(joint, out.clone_a_wire, 3)) - kPcF0) < 1e-10);
    CHECK(std::abs(fidelity(psi, out.clone_a) - kPcF0) < 1e-10);
    CHECK(std::abs(fidelity(psi, out.clone_b) - kPcF0) < 1e-10);
    REQUIRE(out.original_channel.has_value());
    const DecompositionCoeffs d = orthogonal_decomposition(*out.original_channel, psi);
    CHECK(d.f0_sq == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(d.f2_sq == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(frobenius_distance(out.clone_a.matrix(), shrunk_state(psi, 1 / std::sqrt(2.0))) < 1e-9);
  }
  const CloneOutput th8 = pc_clone(equatorial_qubit(kPi / 8));
  CHECK(fidelity(equatorial_qubit(kPi / 8), th8.clone_a) == doctest::Approx(0.853553390593).epsilon(1e-11));
  const CloneOutput pole = pc_clone(PureState::basis(1, 0));
  const double fp = fidelity(PureState::basis(1, 0), pole.clone_a);
  CHECK(fp >= 0.0);
  CHECK(fp <= 1.0);
}

TEST_CASE("pointwise fidelities") {
  const PointwiseFidelities one = pointwise_fidelities(Machine::one_op(), 0.0);
  CHECK(one.a == doctest::Approx(1.0));
  CHECK(one.b == doctest::Approx(1.0));
  CHECK_FALSE(one.original.has_value());
  for (int k = 0; k < 40; ++k) {
    const double th = 0.157 * k;
    const PointwiseFidelities bh = pointwise_fidelities(Machine::bh(), th);
    CHECK(std::abs(bh.a - 5.0 / 6.0) < 1e-12);
    CHECK(std::abs(bh.b - 5.0 / 6.0) < 1e-12);
    const double c2s2 = std::pow(std::cos(th) * std::sin(th), 2);
    const PointwiseFidelities two = pointwise_fidelities(Machine::two_op(kPi / 2), th);
    CHECK(std::abs(two.a - (1 - 2 * c2s2)) < 1e-12);
    CHECK(std::abs(two.b - 2 * c2s2) < 1e-12);
    CHECK(std::abs(two.a + two.b - 1) < 1e-12);
    const PointwiseFidelities pc = pointwise_fidelities(Machine::pc(), th);
    CHECK(pc.original.value() == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("orthogonal decomposition and scaling factor") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = qtest::haar(rng);
    const DecompositionCoeffs pure = orthogonal_decomposition(density_of(psi), psi);
    CHECK(pure.f0_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pure.f2_sq) < 1e-12);
    CHECK(scaling_factor(pure) == doctest::Approx(1.0).epsilon(1e-12));

    const DecompositionCoeffs bh = orthogonal_decomposition(bh_clone(psi).clone_a, psi);
    CHECK(bh.f0_sq == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
    CHECK(bh.f2_sq == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(bh.f0_sq + bh.f2_sq == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(scaling_factor(bh) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  }
  const double r = 1 / std::sqrt(8.0);
  CHECK(scaling_factor({0.5 + r, 0.5 - r, 0.0}) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

  // A coherence outside the psi0 / psi2 basis.
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(orthogonal_decomposition(DensityMatrix(m), PureState::basis(1, 0)), Error);
}

TEST_CASE("cross-term condition at the BH point") {
  const double f0 = 5.0 / 6.0, f2 = 1.0 / 6.0;
  CHECK(std::abs(2 * std::sqrt(f2) * std::sqrt(f0 - f2) - (f0 - f2)) < 1e-12);
}
