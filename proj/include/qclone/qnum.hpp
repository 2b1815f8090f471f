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

// Dense complex linear algebra for small qubit registers.
//
// Basis convention: qubit 0 is the leftmost label and the most significant
// bit of the basis index, so |q0 q1 q2> has index q0*4 + q1*2 + q2.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qclone/errors.hpp"

namespace qclone {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 24;
inline constexpr int kMaxDensityQubits = 12;

inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kSolverTol = 1e-9;
inline constexpr double kPsdFloor = -1e-10;

/// Bit value of `wire` in basis index `index` for an n-qubit register.
constexpr int wire_bit(std::size_t index, int wire, int n_qubits) noexcept {
  return static_cast<int>((index >> (n_qubits - 1 - wire)) & 1U);
}

/// Mask selecting `wire` in a basis index.
constexpr std::size_t wire_mask(int wire, int n_qubits) noexcept {
  return std::size_t{1} << (n_qubits - 1 - wire);
}

/// Unit-norm amplitude vector over 2^n basis states.
class PureState {
 public:
  /// Validates length and finiteness, then rescales to unit norm.
  /// Throws ZeroVector when the squared norm is below 1e-15.
  explicit PureState(std::vector<Complex> amplitudes);

  /// Takes amplitudes that are already normalized (within 1e-9) without
  /// rescaling them. Gate kernels use this so norm drift stays observable.
  static PureState adopt(std::vector<Complex> amplitudes);

  static PureState basis(int n_qubits, std::size_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm_squared() const noexcept;

  void check_wire(int wire) const;

 private:
  struct Trusted {};
  PureState(Trusted, std::vector<Complex> amplitudes);

  int n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// Numerical health of a candidate density matrix.
struct DensityDiagnostics {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger| entry
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok() const noexcept {
    return hermiticity_error <= kAlgebraicTol && trace_error <= kAlgebraicTol &&
           min_eigenvalue >= kPsdFloor;
  }
};

DensityDiagnostics diagnose(const ComplexMatrix& rho);

/// Hermitian, unit-trace, positive semidefinite operator on n qubits.
class DensityMatrix {
 public:
  /// Validates all three invariants; throws InvalidState otherwise.
  explicit DensityMatrix(ComplexMatrix entries);

  /// Skips the eigenvalue check. Only for constructions that preserve the
  /// invariants by design (outer products, partial traces).
  static DensityMatrix trusted(ComplexMatrix entries);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

 private:
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix entries);

  int n_qubits_ = 0;
  ComplexMatrix entries_;
};

PureState make_qubit(Complex alpha, Complex beta);

/// cos(theta)|0> + sin(theta)|1>, the real great circle reached by R(theta, pi/2).
PureState equatorial_qubit(double theta);

/// a ⊗ b; a's qubits take the lower wire indices.
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix density_of(const PureState& psi);

/// Reduced 1-qubit state of `keep`, all other wires traced out.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

/// Reduced 1-qubit state of `keep` taken straight from the amplitudes, so it
/// works on registers too large for a full density matrix.
DensityMatrix reduced_state(const PureState& psi, int keep);

/// <psi| rho |psi>, clamped to [0, 1].
double fidelity(const PureState& psi, const DensityMatrix& rho);

Complex inner(const PureState& a, const PureState& b);

/// sigma_i on one wire, i in {0,1,2,3} with sigma_2 = i(|1><0| - |0><1|).
PureState pauli_apply(int i, const PureState& psi, int wire);

/// NOT = -i sigma_2 followed by complex conjugation (plain -i sigma_2 on real
/// amplitudes). Returns a state orthogonal to the 1-qubit input.
PureState orthogonal_state(const PureState& psi);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Distance between the projectors of two pure states (global phase blind).
double projector_distance(const PureState& a, const PureState& b);

}  // namespace qclone
