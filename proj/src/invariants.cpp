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

#include "qclone/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qclone/averaging.hpp"
#include "qclone/gates.hpp"
#include "qclone/machines.hpp"

namespace qclone {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult check(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

GateOp random_op(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 2), wire(0, n - 1), pauli(1, 3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  switch (kind(rng)) {
    case 0: {
      const int w = wire(rng);
      const double th = angle(rng);
      return RotationOp{w, th, angle(rng)};
    }
    case 1: {
      const int c = wire(rng);
      int t = wire(rng);
      while (t == c) t = wire(rng);
      return CnotOp{c, t, std::bernoulli_distribution(0.5)(rng)};
    }
    default: {
      const int i = pauli(rng);
      return PauliOp{i, wire(rng)};
    }
  }
}

}  // namespace

PureState random_state(std::mt19937_64& rng, int n_qubits) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) {
    const double re = g(rng);
    a = Complex(re, g(rng));
  }
  return PureState(std::move(amps));
}

std::vector<CheckResult> run_invariants(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  const double pc_target = 0.5 + 1.0 / std::sqrt(8.0);

  {
    double norm_err = 0.0, unitary_err = 0.0, invol_err = 0.0;
    std::uniform_int_distribution<int> qubits(2, 4), length(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = qubits(rng);
      Circuit c(n);
      const int len = length(rng);
      for (int k = 0; k < len; ++k) c.add(random_op(rng, n));
      const PureState psi = random_state(rng, n);
      const PureState seq = run(c, psi);
      norm_err = std::max(norm_err, std::abs(seq.norm_squared() - 1.0));
      const ComplexMatrix u = circuit_unitary(c);
      Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
      for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
      const Eigen::VectorXcd uv = u * v;
      for (std::size_t i = 0; i < psi.dim(); ++i) {
        unitary_err = std::max(unitary_err, std::abs(uv(static_cast<Eigen::Index>(i)) - seq[i]));
      }
      for (const auto& op : c.ops()) {
        if (const auto* cn = std::get_if<CnotOp>(&op)) {
          const PureState twice = apply_cnot(apply_cnot(psi, *cn), *cn);
          for (std::size_t i = 0; i < psi.dim(); ++i) {
            invol_err = std::max(invol_err, std::abs(twice[i] - psi[i]));
          }
        }
      }
    }
    out.push_back(check("gates.norm_preserved", norm_err, 1e-12));
    out.push_back(check("gates.unitary_matches_sequential", unitary_err, 1e-10));
    out.push_back(check("gates.cnot_involution", invol_err, 1e-12));

    double rot_err = 0.0;
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 100; ++trial) {
      const double th = angle(rng), ph = angle(rng);
      const ComplexMatrix p = rotation_matrix(th, ph) * rotation_matrix(-th, ph);
      rot_err = std::max(rot_err, (p - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
    out.push_back(check("gates.rotation_inverse", rot_err, 1e-12));
  }

  {
    double fid_err = 0.0, copy_err = 0.0, scale_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const PureState psi = random_state(rng);
      const CloneOutput o = bh_clone(psi);
      fid_err = std::max({fid_err, std::abs(fidelity(psi, o.clone_a) - 5.0 / 6.0),
                          std::abs(fidelity(psi, o.clone_b) - 5.0 / 6.0)});
      copy_err = std::max(copy_err, frobenius_distance(o.clone_a.matrix(), o.clone_b.matrix()));
      scale_err = std::max(scale_err,
                           frobenius_distance(o.clone_a.matrix(), shrunk_state(psi, 2.0 / 3.0)));
    }
    out.push_back(check("machines.bh_universal_fidelity", fid_err, 1e-10,
                        "1000 Haar-random inputs, target 5/6"));
    out.push_back(check("machines.bh_identical_clones", copy_err, 1e-10));
    out.push_back(check("machines.bh_scaling_form", scale_err, 1e-9, "s = 2/3"));
  }

  {
    double fid_err = 0.0, scale_err = 0.0;
    const double s = 2.0 * pc_target - 1.0;
    for (int k = 0; k < 256; ++k) {
      const PureState psi = equatorial_qubit(2.0 * kPi * k / 256.0);
      const CloneOutput o = pc_clone(psi);
      fid_err = std::max({fid_err, std::abs(fidelity(psi, o.clone_a) - pc_target),
                          std::abs(fidelity(psi, o.clone_b) - pc_target)});
      scale_err = std::max({scale_err, frobenius_distance(o.clone_a.matrix(), shrunk_state(psi, s)),
                            frobenius_distance(o.clone_b.matrix(), shrunk_state(psi, s))});
    }
    out.push_back(check("machines.pc_equatorial_fidelity", fid_err, 1e-10,
                        "256 equatorial inputs, target 1/2 + 1/sqrt8"));
    out.push_back(check("machines.pc_scaling_form", scale_err, 1e-9, "s = 1/sqrt2"));
  }

  {
    const Machine m = Machine::two_op(kPi / 4.0);
    double var = 0.0;
    for (auto kind : {MeasureKind::EquatorialUniform, MeasureKind::PolarUniform}) {
      var = std::max(var, average_fidelity(m, kind).var_a);
    }
    double joint_err = 0.0;
    for (int k = 0; k < 64; ++k) {
      const PureState psi = equatorial_qubit(2.0 * kPi * k / 64.0);
      const CloneOutput o = clone(m, psi);
      joint_err = std::max(joint_err,
                           projector_distance(o.joint, tensor(psi, equatorial_qubit(kPi / 4.0))));
    }
    out.push_back(check("machines.two_op_pi4_constant_fidelity", var, 1e-12));
    out.push_back(check("machines.two_op_pi4_output_equals_input", joint_err, 1e-10));
  }

  {
    const Machine m = Machine::two_op(kPi / 2.0);
    double sum_err = 0.0;
    for (int k = 0; k < 64; ++k) {
      const auto f = pointwise_fidelities(m, 2.0 * kPi * k / 64.0);
      sum_err = std::max(sum_err, std::abs(f.a + f.b - 1.0));
    }
    double corr_err = 0.0;
    for (auto kind : {MeasureKind::EquatorialUniform, MeasureKind::PolarUniform}) {
      const auto st = average_fidelity(m, kind);
      corr_err = std::max(corr_err, st.correlation ? std::abs(*st.correlation + 1.0) : 1.0);
    }
    out.push_back(check("machines.two_op_pi2_complementary", sum_err, 1e-12));
    out.push_back(check("machines.two_op_pi2_anticorrelated", corr_err, 1e-9));
  }

  {
    const double f0 = 5.0 / 6.0, f2 = 1.0 / 6.0;
    const double err = std::abs(2.0 * std::sqrt(f2) * std::sqrt(f0 - f2) - (f0 - f2));
    out.push_back(check("machines.cross_term_condition", err, 1e-12));
  }

  {
    const auto quartic = [](double th) {
      return std::pow(std::cos(th), 4) + std::pow(std::sin(th), 4);
    };
    const auto plan = SamplingPlan::quadrature();
    out.push_back(check(
        "averaging.equatorial_quartic",
        std::abs(expectation(MeasureKind::EquatorialUniform, plan, quartic) - 0.75), 1e-9));
    out.push_back(check("averaging.polar_quartic",
                        std::abs(expectation(MeasureKind::PolarUniform, plan, quartic) - 2.0 / 3.0),
                        1e-9));
  }
  return out;
}

}  // namespace qclone
