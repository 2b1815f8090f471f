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

#include <array>
#include <cstdint>
#include <vector>

#include "qclone/gates.hpp"

namespace qclone {

/// Amplitudes (C1, C2, C3, C4) of a two-qubit state over |00>,|01>,|10>,|11>.
struct PrepCoeffs {
  std::array<double, 4> c{1.0, 0.0, 0.0, 0.0};

  /// Checks sum C_i^2 = 1 within 1e-9; throws InvalidArgument otherwise.
  explicit PrepCoeffs(std::array<double, 4> values);
  PrepCoeffs() = default;

  static PrepCoeffs normalized(std::array<double, 4> values);

  double operator[](std::size_t i) const { return c[i]; }
};

/// Rotation angles of R1(theta3) P21 R2(theta2) P12 R1(theta1)|00>, in radians.
struct AngleTriple {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

/// Maps an angle onto (-pi, pi].
double normalize_angle(double theta) noexcept;

AngleTriple normalized(const AngleTriple& t) noexcept;

PrepCoeffs reconstruct_coeffs(const AngleTriple& angles);

/// The two-qubit preparation circuit for `angles` (wire 0 = first prep qubit).
Circuit prep_circuit(const AngleTriple& angles);

PureState prep_state(const AngleTriple& angles);

/// Largest |C_i - C'_i| between two coefficient sets.
double coeff_residual(const PrepCoeffs& a, const PrepCoeffs& b) noexcept;

/// cos^2 values from the closed form for one sign of the discriminant root.
struct CosSquaredBranch {
  int sign = +1;
  double cos2_theta1 = 0.0;
  double cos2_theta2 = 0.0;
  double cos2_theta3 = 0.0;
  bool degenerate = false;  // a denominator fell below 1e-12
};

std::vector<CosSquaredBranch> closed_form_cos_squared(const PrepCoeffs& coeffs);

struct AngleSolution {
  AngleTriple angles;
  double residual = 0.0;  // max coefficient error of the re-simulated circuit
  bool from_fallback = false;
};

/// Every angle triple whose preparation circuit reproduces `coeffs`.
///
/// Quadrant choices for each closed-form cos^2 are enumerated, polished with
/// Gauss-Newton and kept only if re-simulation matches within 1e-9. When the
/// closed form degenerates, a damped least-squares solve from eight fixed
/// starts takes over. Throws NoSolution if nothing reaches 1e-6.
std::vector<AngleSolution> solve_prep_angles(const PrepCoeffs& coeffs);

/// Point (x, y, z) of the phase-covariant design problem
///   max x^2 + y^2  s.t.  y^2 + z^2 = 1 - f0^2,  2(xy + yz) = 2 f0^2 - 1
/// with f0^2 = x^2 + y^2.
struct PcSolution {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double f0_sq = 0.0;
  double constraint_residual = 0.0;
  int starts = 0;
  int starts_converged = 0;   // reached a feasible stationary point
  int starts_at_best = 0;     // ... with the reported objective (within 1e-9)
};

/// Residual of the three invariants of PcSolution at (x, y, z).
double pc_constraint_residual(double x, double y, double z) noexcept;

/// Uniformly drawn point on the feasible set (either branch, chosen at random).
std::array<double, 3> random_feasible_pc_point(std::uint64_t seed);

struct PcOptimizeOptions {
  std::vector<std::array<double, 3>> starts;  // used as given when non-empty
  int random_starts = 100;                    // otherwise drawn from `seed`
  std::uint64_t seed = 20260101;
  bool fix_z_zero = false;
};

/// Multi-start augmented Lagrangian; the best converged start wins.
/// Throws ConvergenceFailure when no start reaches a feasible point.
PcSolution pc_optimize(const PcOptimizeOptions& options = {});

/// The same system with z pinned to 0.
PcSolution bh_from_pc_system();

}  // namespace qclone
