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

#include "qclone/qnum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qclone {
namespace {

int qubits_for_length(std::size_t length) {
  if (length < 2 || !std::has_single_bit(length)) {
    throw Error(ErrorCode::DimensionMismatch,
                "amplitude vector length " + std::to_string(length) +
                    " is not a power of two >= 2");
  }
  const int n = std::countr_zero(length);
  if (n > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded,
                std::to_string(n) + " qubits exceeds the " + std::to_string(kMaxQubits) +
                    "-qubit bound");
  }
  return n;
}

double squared_norm(std::span<const Complex> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

void require_finite(std::span<const Complex> amps) {
  for (const auto& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::InvalidState, "non-finite amplitude");
    }
  }
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes)
    : n_qubits_(qubits_for_length(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  require_finite(amplitudes_);
  const double s = squared_norm(amplitudes_);
  if (s < 1e-15) throw Error(ErrorCode::ZeroVector, "state has zero norm");
  const double scale = 1.0 / std::sqrt(s);
  for (auto& a : amplitudes_) a *= scale;
}

PureState::PureState(Trusted, std::vector<Complex> amplitudes)
    : n_qubits_(qubits_for_length(amplitudes.size())), amplitudes_(std::move(amplitudes)) {}

PureState PureState::adopt(std::vector<Complex> amplitudes) {
  require_finite(amplitudes);
  const double s = squared_norm(amplitudes);
  if (std::abs(s - 1.0) > kSolverTol) {
    throw Error(ErrorCode::InvalidState,
                "adopted amplitudes have squared norm " + std::to_string(s));
  }
  return PureState(Trusted{}, std::move(amplitudes));
}

PureState PureState::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded, "qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return PureState(Trusted{}, std::move(amps));
}

double PureState::norm_squared() const noexcept { return squared_norm(amplitudes_); }

void PureState::check_wire(int wire) const {
  if (wire < 0 || wire >= n_qubits_) {
    throw Error(ErrorCode::IndexOutOfRange, "wire " + std::to_string(wire) + " not in [0, " +
                                                std::to_string(n_qubits_) + ")");
  }
}

DensityDiagnostics diagnose(const ComplexMatrix& rho) {
  DensityDiagnostics d;
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - Complex(1.0));
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square");
  }
  n_qubits_ = qubits_for_length(static_cast<std::size_t>(entries.rows()));
  if (n_qubits_ > kMaxDensityQubits) {
    throw Error(ErrorCode::CapacityExceeded, "density matrix too large");
  }
  const auto d = diagnose(entries);
  if (!d.ok()) {
    throw Error(ErrorCode::InvalidState,
                "not a density matrix (hermiticity " + std::to_string(d.hermiticity_error) +
                    ", trace " + std::to_string(d.trace_error) + ", min eigenvalue " +
                    std::to_string(d.min_eigenvalue) + ")");
  }
  entries_ = std::move(entries);
}

DensityMatrix::DensityMatrix(Trusted, ComplexMatrix entries)
    : n_qubits_(qubits_for_length(static_cast<std::size_t>(entries.rows()))),
      entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::trusted(ComplexMatrix entries) {
  return DensityMatrix(Trusted{}, std::move(entries));
}

PureState make_qubit(Complex alpha, Complex beta) {
  return PureState(std::vector<Complex>{alpha, beta});
}

PureState equatorial_qubit(double theta) {
  return PureState::adopt({Complex(std::cos(theta)), Complex(std::sin(theta))});
}

PureState tensor(const PureState& a, const PureState& b) {
  if (a.n_qubits() + b.n_qubits() > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded, "tensor product exceeds the qubit bound");
  }
  std::vector<Complex> out;
  out.reserve(a.dim() * b.dim());
  for (const auto& u : a.amplitudes()) {
    for (const auto& v : b.amplitudes()) out.push_back(u * v);
  }
  return PureState::adopt(std::move(out));
}

DensityMatrix density_of(const PureState& psi) {
  if (psi.n_qubits() > kMaxDensityQubits) {
    throw Error(ErrorCode::CapacityExceeded, "density matrix too large");
  }
  const auto amps = psi.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return DensityMatrix::trusted(v * v.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  const int n = rho.n_qubits();
  if (n < 2) throw Error(ErrorCode::WrongArity, "partial trace needs at least 2 qubits");
  if (keep < 0 || keep >= n) throw Error(ErrorCode::IndexOutOfRange, "kept wire out of range");
  const std::size_t mask = wire_mask(keep, n);
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (i & mask) continue;
    // i and i|mask differ only on the kept wire.
    const std::size_t j = i | mask;
    out(0, 0) += m(i, i);
    out(0, 1) += m(i, j);
    out(1, 0) += m(j, i);
    out(1, 1) += m(j, j);
  }
  return DensityMatrix::trusted(std::move(out));
}

DensityMatrix reduced_state(const PureState& psi, int keep) {
  const int n = psi.n_qubits();
  if (n < 2) throw Error(ErrorCode::WrongArity, "reduced state needs at least 2 qubits");
  psi.check_wire(keep);
  const std::size_t mask = wire_mask(keep, n);
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (i & mask) continue;
    const Complex a0 = psi[i];
    const Complex a1 = psi[i | mask];
    out(0, 0) += a0 * std::conj(a0);
    out(0, 1) += a0 * std::conj(a1);
    out(1, 0) += a1 * std::conj(a0);
    out(1, 1) += a1 * std::conj(a1);
  }
  return DensityMatrix::trusted(std::move(out));
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and density matrix dimensions differ");
  }
  const auto amps = psi.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const double f = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product dimensions");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

PureState pauli_apply(int i, const PureState& psi, int wire) {
  if (i < 0 || i > 3) throw Error(ErrorCode::IndexOutOfRange, "Pauli index must be 0..3");
  psi.check_wire(wire);
  const int n = psi.n_qubits();
  const std::size_t mask = wire_mask(wire, n);
  std::vector<Complex> out(psi.amplitudes().begin(), psi.amplitudes().end());
  if (i == 0) return PureState::adopt(std::move(out));
  const Complex I(0.0, 1.0);
  for (std::size_t k = 0; k < psi.dim(); ++k) {
    if (k & mask) continue;
    const Complex a0 = psi[k];
    const Complex a1 = psi[k | mask];
    switch (i) {
      case 1:
        out[k] = a1;
        out[k | mask] = a0;
        break;
      case 2:
        out[k] = -I * a1;
        out[k | mask] = I * a0;
        break;
      default:
        out[k | mask] = -a1;
        break;
    }
  }
  return PureState::adopt(std::move(out));
}

PureState orthogonal_state(const PureState& psi) {
  if (psi.n_qubits() != 1) throw Error(ErrorCode::WrongArity, "orthogonal_state takes 1 qubit");
  // -i sigma_2 (a, b) = (-b, a) on real amplitudes; conjugated so the result
  // stays orthogonal for complex input too.
  return PureState::adopt({-std::conj(psi[1]), std::conj(psi[0])});
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  return (a - b).norm();
}

double projector_distance(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "projector dimensions");
  // Entrywise rather than 2 - 2|<a|b>|^2, which cancels catastrophically near 1.
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      s += std::norm(a[i] * std::conj(a[j]) - b[i] * std::conj(b[j]));
    }
  }
  return std::sqrt(s);
}

}  // namespace qclone
