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

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qclone/machines.hpp"

namespace qclone {

/// How input states are drawn when averaging fidelities.
///
/// EquatorialUniform: theta uniform on [0, 2pi), state (cos theta, sin theta).
/// PolarUniform: u = alpha^2 uniform on [0, 1], state (sqrt u, sqrt(1 - u)).
/// PolarUniform is integrated in theta = arccos(sqrt u) on [0, pi/2] with
/// density sin(2 theta), which keeps the integrand smooth at the poles.
enum class MeasureKind { EquatorialUniform, PolarUniform };

std::string_view to_string(MeasureKind kind) noexcept;
std::optional<MeasureKind> parse_measure(std::string_view name);

struct SamplingPlan {
  enum class Method { Quadrature, MonteCarlo };

  Method method = Method::Quadrature;
  int order = 128;            // Gauss-Legendre nodes
  std::size_t samples = 0;    // Monte Carlo draws, >= 1000
  std::uint64_t seed = 0;

  static SamplingPlan quadrature(int order = 128) { return {Method::Quadrature, order, 0, 0}; }
  static SamplingPlan monte_carlo(std::size_t samples, std::uint64_t seed) {
    return {Method::MonteCarlo, 0, samples, seed};
  }
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes mapped onto [lo, hi].
QuadratureRule gauss_legendre(int order, double lo, double hi);

/// Weighted sample points (theta, weight) whose weights sum to 1.
struct MeasurePoint {
  double theta = 0.0;
  double weight = 0.0;
};

std::vector<MeasurePoint> measure_points(MeasureKind kind, const SamplingPlan& plan);

/// Expectation of f(theta) under the measure.
double expectation(MeasureKind kind, const SamplingPlan& plan,
                   const std::function<double(double)>& f);

struct FidelityStats {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  /// Pearson correlation of F_a and F_b; empty when either variance is
  /// below 1e-14 (a constant fidelity has no correlation).
  std::optional<double> correlation;
  MeasureKind measure = MeasureKind::EquatorialUniform;
  SamplingPlan plan;
};

FidelityStats average_fidelity(const Machine& machine, MeasureKind measure,
                               const SamplingPlan& plan = SamplingPlan::quadrature());

}  // namespace qclone
