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

// Shared helpers for the test binaries. The oracles here are deliberately
// naive (explicit Kronecker products, dense matrices) so they do not share
// code paths with the library kernels.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qclone/qnum.hpp"

namespace qtest {

using qclone::Complex;
using qclone::ComplexMatrix;

inline constexpr double kPi = 3.14159265358979323846;

inline Eigen::VectorXcd vec(const qclone::PureState& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  return v;
}

inline qclone::PureState state(const Eigen::VectorXcd& v) {
  return qclone::PureState(std::vector<Complex>(v.data(), v.data() + v.size()));
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd k(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a(i) * b;
  return k;
}

inline ComplexMatrix pauli(int i) {
  ComplexMatrix m(2, 2);
  const Complex I(0.0, 1.0);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Operator `op` on one wire of an n-qubit register, identity elsewhere.
inline ComplexMatrix on_wire(const ComplexMatrix& op, int wire, int n) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (int w = 0; w < n; ++w) m = kron(m, w == wire ? op : ComplexMatrix::Identity(2, 2));
  return m;
}

/// Dense CNOT built from its truth table.
inline ComplexMatrix cnot_matrix(int control, int target, int n, bool inverted = false) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int c = static_cast<int>((i >> (n - 1 - control)) & 1);
    const Eigen::Index j = (c ^ (inverted ? 1 : 0)) ? (i ^ (Eigen::Index{1} << (n - 1 - target))) : i;
    m(j, i) = 1.0;
  }
  return m;
}

/// Reduced state of one wire by explicit summation over the other indices.
inline ComplexMatrix reduce(const Eigen::VectorXcd& psi, int keep, int n) {
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    for (Eigen::Index j = 0; j < psi.size(); ++j) {
      const Eigen::Index mask = Eigen::Index{1} << (n - 1 - keep);
      if ((i & ~mask) != (j & ~mask)) continue;
      r((i & mask) ? 1 : 0, (j & mask) ? 1 : 0) += psi(i) * std::conj(psi(j));
    }
  }
  return r;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline qclone::PureState haar(std::mt19937_64& rng, int n = 1) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) {
    const double re = g(rng);
    x = Complex(re, g(rng));
  }
  return qclone::PureState(std::move(a));
}

}  // namespace qtest
