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

#include "qclone/averaging.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

namespace qclone {

std::string_view to_string(MeasureKind kind) noexcept {
  return kind == MeasureKind::EquatorialUniform ? "equatorial" : "polar";
}

std::optional<MeasureKind> parse_measure(std::string_view name) {
  if (name == "equatorial") return MeasureKind::EquatorialUniform;
  if (name == "polar") return MeasureKind::PolarUniform;
  return std::nullopt;
}

QuadratureRule gauss_legendre(int order, double lo, double hi) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  // Boost returns the non-negative zeros only, ascending.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(order);
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(order));
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it > 0.0) x.push_back(-*it);
  }
  for (double z : half) x.push_back(z);
  QuadratureRule rule;
  const double mid = 0.5 * (hi + lo);
  const double scale = 0.5 * (hi - lo);
  for (double z : x) {
    const double dp = boost::math::legendre_p_prime(order, z);
    rule.nodes.push_back(mid + scale * z);
    rule.weights.push_back(scale * 2.0 / ((1.0 - z * z) * dp * dp));
  }
  return rule;
}

std::vector<MeasurePoint> measure_points(MeasureKind kind, const SamplingPlan& plan) {
  constexpr double kPi = std::numbers::pi;
  std::vector<MeasurePoint> points;
  if (plan.method == SamplingPlan::Method::Quadrature) {
    if (kind == MeasureKind::EquatorialUniform) {
      const auto rule = gauss_legendre(plan.order, 0.0, 2.0 * kPi);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        points.push_back({rule.nodes[i], rule.weights[i] / (2.0 * kPi)});
      }
    } else {
      const auto rule = gauss_legendre(plan.order, 0.0, kPi / 2.0);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        points.push_back({rule.nodes[i], rule.weights[i] * std::sin(2.0 * rule.nodes[i])});
      }
    }
    return points;
  }
  if (plan.samples < 1000) {
    throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 1000 samples");
  }
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w = 1.0 / static_cast<double>(plan.samples);
  points.reserve(plan.samples);
  for (std::size_t i = 0; i < plan.samples; ++i) {
    const double r = unit(rng);
    const double theta =
        kind == MeasureKind::EquatorialUniform ? 2.0 * kPi * r : std::acos(std::sqrt(r));
    points.push_back({theta, w});
  }
  return points;
}

double expectation(MeasureKind kind, const SamplingPlan& plan,
                   const std::function<double(double)>& f) {
  double sum = 0.0;
  for (const auto& p : measure_points(kind, plan)) sum += p.weight * f(p.theta);
  return sum;
}

FidelityStats average_fidelity(const Machine& machine, MeasureKind measure,
                               const SamplingPlan& plan) {
  const auto points = measure_points(measure, plan);
  std::vector<double> fa;
  std::vector<double> fb;
  fa.reserve(points.size());
  fb.reserve(points.size());
  for (const auto& p : points) {
    const auto f = pointwise_fidelities(machine, p.theta);
    fa.push_back(f.a);
    fb.push_back(f.b);
  }
  FidelityStats stats;
  stats.measure = measure;
  stats.plan = plan;
  for (std::size_t i = 0; i < points.size(); ++i) {
    stats.mean_a += points[i].weight * fa[i];
    stats.mean_b += points[i].weight * fb[i];
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double da = fa[i] - stats.mean_a;
    const double db = fb[i] - stats.mean_b;
    stats.var_a += points[i].weight * da * da;
    stats.var_b += points[i].weight * db * db;
    cov += points[i].weight * da * db;
  }
  if (stats.var_a > 1e-14 && stats.var_b > 1e-14) {
    stats.correlation = cov / std::sqrt(stats.var_a * stats.var_b);
  }
  return stats;
}

}  // namespace qclone
