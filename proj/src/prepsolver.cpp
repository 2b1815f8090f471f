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

#include "qclone/prepsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include <Eigen/Dense>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKeepTol = 1e-6;
constexpr double kAcceptTol = 1e-9;
constexpr double kDegenerateTol = 1e-12;

using Vec4 = Eigen::Vector4d;
using Mat43 = Eigen::Matrix<double, 4, 3>;

Vec4 coeff_vector(const AngleTriple& t) {
  const double c1 = std::cos(t.theta1), s1 = std::sin(t.theta1);
  const double c2 = std::cos(t.theta2), s2 = std::sin(t.theta2);
  const double c3 = std::cos(t.theta3), s3 = std::sin(t.theta3);
  return {c1 * c2 * c3 + s1 * s2 * s3, s1 * c2 * c3 - c1 * s2 * s3,
          c1 * c2 * s3 - s1 * s2 * c3, c1 * s2 * c3 + s1 * c2 * s3};
}

Mat43 coeff_jacobian(const AngleTriple& t) {
  const double c1 = std::cos(t.theta1), s1 = std::sin(t.theta1);
  const double c2 = std::cos(t.theta2), s2 = std::sin(t.theta2);
  const double c3 = std::cos(t.theta3), s3 = std::sin(t.theta3);
  const Vec4 c = coeff_vector(t);
  Mat43 j;
  j.col(0) << -c[1], c[0], -c[3], c[2];
  j.col(1) << -c1 * s2 * c3 + s1 * c2 * s3, -s1 * s2 * c3 - c1 * c2 * s3,
      -c1 * s2 * s3 - s1 * c2 * c3, c1 * c2 * c3 - s1 * s2 * s3;
  j.col(2) << -c[2], -c[3], c[0], c[1];
  return j;
}

Vec4 target_vector(const PrepCoeffs& p) { return {p[0], p[1], p[2], p[3]}; }

double residual_of(const AngleTriple& t, const Vec4& target) {
  return (coeff_vector(t) - target).cwiseAbs().maxCoeff();
}

AngleTriple step(const AngleTriple& t, const Eigen::Vector3d& d) {
  return {t.theta1 + d[0], t.theta2 + d[1], t.theta3 + d[2]};
}

// Levenberg-Marquardt on the 4x3 residual. With lambda near zero this is
// plain Gauss-Newton, used to polish closed-form candidates.
AngleTriple least_squares(AngleTriple t, const Vec4& target, int iterations,
                          double lambda) {
  double best = residual_of(t, target);
  for (int it = 0; it < iterations && best > 1e-16; ++it) {
    const Vec4 r = coeff_vector(t) - target;
    const Mat43 j = coeff_jacobian(t);
    Eigen::Matrix3d h = j.transpose() * j;
    h.diagonal().array() += lambda;
    const Eigen::Vector3d d = h.ldlt().solve(-j.transpose() * r);
    const AngleTriple next = step(t, d);
    const double res = residual_of(next, target);
    if (res < best) {
      t = next;
      best = res;
      lambda = std::max(lambda * 0.3, 1e-15);
    } else {
      lambda = std::max(lambda * 10.0, 1e-12);
      if (lambda > 1e6) break;
    }
  }
  return t;
}

double clamp_unit(double v, bool& ok) {
  if (v < -kAcceptTol || v > 1.0 + kAcceptTol || !std::isfinite(v)) ok = false;
  return std::clamp(v, 0.0, 1.0);
}

std::array<double, 4> quadrant_candidates(double cos_sq) {
  const double a = std::acos(std::sqrt(cos_sq));
  return {a, -a, kPi - a, a - kPi};
}

bool same_angles(const AngleTriple& a, const AngleTriple& b) {
  return std::abs(normalize_angle(a.theta1 - b.theta1)) < 1e-7 &&
         std::abs(normalize_angle(a.theta2 - b.theta2)) < 1e-7 &&
         std::abs(normalize_angle(a.theta3 - b.theta3)) < 1e-7;
}

void keep_solution(std::vector<AngleSolution>& out, AngleTriple t,
                   const Vec4& target, bool fallback) {
  t = normalized(t);
  const double res = residual_of(t, target);
  if (res > kAcceptTol) return;
  for (const auto& s : out) {
    if (same_angles(s.angles, t)) return;
  }
  out.push_back({t, res, fallback});
}

}  // namespace

PrepCoeffs::PrepCoeffs(std::array<double, 4> values) : c(values) {
  double sum = 0.0;
  for (double v : c) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    sum += v * v;
  }
  if (std::abs(sum - 1.0) > kAcceptTol) {
    throw Error(ErrorCode::InvalidArgument,
                "coefficients must satisfy sum C_i^2 = 1 (got " + std::to_string(sum) + ")");
  }
}

PrepCoeffs PrepCoeffs::normalized(std::array<double, 4> values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  if (!(sum > 1e-15) || !std::isfinite(sum)) {
    throw Error(ErrorCode::ZeroVector, "coefficients have zero norm");
  }
  const double s = 1.0 / std::sqrt(sum);
  for (double& v : values) v *= s;
  return PrepCoeffs(values);
}

double normalize_angle(double theta) noexcept {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

AngleTriple normalized(const AngleTriple& t) noexcept {
  return {normalize_angle(t.theta1), normalize_angle(t.theta2), normalize_angle(t.theta3)};
}

PrepCoeffs reconstruct_coeffs(const AngleTriple& angles) {
  const Vec4 v = coeff_vector(angles);
  PrepCoeffs p;
  p.c = {v[0], v[1], v[2], v[3]};
  return p;
}

Circuit prep_circuit(const AngleTriple& angles) {
  Circuit c(2);
  c.rotation(0, angles.theta1).cnot(0, 1).rotation(1, angles.theta2).cnot(1, 0).rotation(
      0, angles.theta3);
  return c;
}

PureState prep_state(const AngleTriple& angles) {
  return run(prep_circuit(angles), PureState::basis(2, 0));
}

double coeff_residual(const PrepCoeffs& a, const PrepCoeffs& b) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<CosSquaredBranch> closed_form_cos_squared(const PrepCoeffs& p) {
  const double c1 = p[0], c2 = p[1], c3 = p[2], c4 = p[3];
  const double a = 1.0 - 2.0 * c3 * c3 - 2.0 * c4 * c4;
  const double b = 1.0 - 2.0 * c2 * c2 - 2.0 * c4 * c4;
  const double disc =
      1.0 - 4.0 * (c1 * c1 * c4 * c4 + c2 * c2 * c3 * c3) + 8.0 * c1 * c2 * c3 * c4;
  std::vector<CosSquaredBranch> out;
  for (int sign : {+1, -1}) {
    CosSquaredBranch br;
    br.sign = sign;
    if (disc < kDegenerateTol || std::abs(a) < kDegenerateTol) {
      br.degenerate = true;
      out.push_back(br);
      continue;
    }
    br.cos2_theta3 = 0.5 * (1.0 + sign * a / std::sqrt(disc));
    const double denom = 1.0 - 2.0 * br.cos2_theta3;
    if (std::abs(denom) < kDegenerateTol) {
      br.degenerate = true;
      out.push_back(br);
      continue;
    }
    br.cos2_theta2 = (c3 * c3 + c4 * c4 - br.cos2_theta3) / denom;
    br.cos2_theta1 = (c2 * c2 - c3 * c3) / a + br.cos2_theta3 * b / a;
    out.push_back(br);
  }
  return out;
}

std::vector<AngleSolution> solve_prep_angles(const PrepCoeffs& coeffs) {
  const Vec4 target = target_vector(coeffs);
  std::vector<AngleSolution> out;
  bool any_degenerate = false;

  for (const auto& br : closed_form_cos_squared(coeffs)) {
    if (br.degenerate) {
      any_degenerate = true;
      continue;
    }
    bool ok = true;
    const double k1 = clamp_unit(br.cos2_theta1, ok);
    const double k2 = clamp_unit(br.cos2_theta2, ok);
    const double k3 = clamp_unit(br.cos2_theta3, ok);
    if (!ok) continue;
    for (double t1 : quadrant_candidates(k1)) {
      for (double t2 : quadrant_candidates(k2)) {
        for (double t3 : quadrant_candidates(k3)) {
          const AngleTriple t{t1, t2, t3};
          if (residual_of(t, target) >= kKeepTol) continue;
          keep_solution(out, least_squares(t, target, 30, 1e-15), target, false);
        }
      }
    }
  }

  if (out.empty() || any_degenerate) {
    for (double a : {0.3, -1.2}) {
      for (double b : {0.3, -1.2}) {
        for (double c : {0.3, -1.2}) {
          const AngleTriple t = least_squares({a, b, c}, target, 400, 1e-3);
          keep_solution(out, least_squares(t, target, 30, 1e-15), target, true);
        }
      }
    }
  }

  if (out.empty()) {
    throw Error(ErrorCode::NoSolution, "no angle triple reproduces the coefficients");
  }

  // Converged residuals differ only by rounding; treat them as tied so the
  // order is decided by the angles.
  auto key = [](const AngleSolution& s) {
    return std::make_tuple(s.residual > 1e-12 ? s.residual : 0.0, s.angles.theta1,
                           s.angles.theta2, s.angles.theta3);
  };
  std::sort(out.begin(), out.end(),
            [&](const AngleSolution& x, const AngleSolution& y) { return key(x) < key(y); });
  return out;
}

// ---------------------------------------------------------------------------
// Phase-covariant design system

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Equivalent pair of constraints once f0^2 = x^2 + y^2 is substituted:
//   g1 = x^2 + 2y^2 + z^2 - 1,  g2 = 2xy + 2yz - x^2 + z^2.
Eigen::Vector2d constraints(const Vec3& v) {
  const double x = v[0], y = v[1], z = v[2];
  return {x * x + 2 * y * y + z * z - 1.0, 2 * x * y + 2 * y * z - x * x + z * z};
}

Eigen::Matrix<double, 3, 2> constraint_gradients(const Vec3& v) {
  const double x = v[0], y = v[1], z = v[2];
  Eigen::Matrix<double, 3, 2> g;
  g.col(0) << 2 * x, 4 * y, 2 * z;
  g.col(1) << 2 * y - 2 * x, 2 * x + 2 * z, 2 * y + 2 * z;
  return g;
}

const Mat3& hessian_g1() {
  static const Mat3 h = Vec3(2, 4, 2).asDiagonal();
  return h;
}

const Mat3& hessian_g2() {
  static const Mat3 h = (Mat3() << -2, 2, 0, 2, 0, 2, 0, 2, 2).finished();
  return h;
}

const Mat3& hessian_f() {
  static const Mat3 h = Vec3(-2, -2, 0).asDiagonal();
  return h;
}

Vec3 grad_f(const Vec3& v) { return {-2 * v[0], -2 * v[1], 0.0}; }

struct Masked {
  bool fix_z;
  int dim() const { return fix_z ? 2 : 3; }
  Eigen::VectorXd cut(const Vec3& g) const { return g.head(dim()); }
  Eigen::MatrixXd cut(const Mat3& h) const { return h.topLeftCorner(dim(), dim()); }
  Vec3 pad(const Eigen::VectorXd& d) const {
    Vec3 r = Vec3::Zero();
    r.head(dim()) = d;
    return r;
  }
};

double al_value(const Vec3& v, const Eigen::Vector2d& lambda, double mu) {
  const Eigen::Vector2d g = constraints(v);
  return -(v[0] * v[0] + v[1] * v[1]) + lambda.dot(g) + 0.5 * mu * g.squaredNorm();
}

// Minimizes the augmented Lagrangian in v with a convexified Newton step.
Vec3 al_inner(Vec3 v, const Eigen::Vector2d& lambda, double mu, const Masked& m) {
  for (int it = 0; it < 200; ++it) {
    const Eigen::Vector2d g = constraints(v);
    const auto jg = constraint_gradients(v);
    const Eigen::Vector2d mult = lambda + mu * g;
    const Vec3 grad = grad_f(v) + jg * mult;
    if (m.cut(grad).norm() < 1e-14) break;
    const Mat3 h = hessian_f() + mult[0] * hessian_g1() + mult[1] * hessian_g2() +
                   mu * jg * jg.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.cut(h));
    Eigen::VectorXd ev = es.eigenvalues().cwiseAbs().cwiseMax(1e-8);
    const Eigen::VectorXd d = -es.eigenvectors() *
                              (ev.cwiseInverse().asDiagonal() *
                               (es.eigenvectors().transpose() * m.cut(grad)));
    const double f0 = al_value(v, lambda, mu);
    const double slope = m.cut(grad).dot(d);
    double t = 1.0;
    Vec3 next = v + m.pad(d);
    while (al_value(next, lambda, mu) > f0 + 1e-4 * t * slope && t > 1e-12) {
      t *= 0.5;
      next = v + t * m.pad(d);
    }
    if ((next - v).norm() < 1e-16) break;
    v = next;
  }
  return v;
}

// Newton on the KKT system to finish what the penalty loop approached.
bool kkt_polish(Vec3& v, Eigen::Vector2d& lambda, const Masked& m) {
  const int n = m.dim();
  for (int it = 0; it < 30; ++it) {
    const Eigen::Vector2d g = constraints(v);
    const auto jg = constraint_gradients(v);
    const Vec3 grad = grad_f(v) + jg * lambda;
    Eigen::VectorXd rhs(n + 2);
    rhs << m.cut(grad), g;
    if (rhs.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n + 2, n + 2);
    k.topLeftCorner(n, n) =
        m.cut(Mat3(hessian_f() + lambda[0] * hessian_g1() + lambda[1] * hessian_g2()));
    k.topRightCorner(n, 2) = jg.topRows(n);
    k.bottomLeftCorner(2, n) = jg.topRows(n).transpose();
    const Eigen::VectorXd d = k.colPivHouseholderQr().solve(-rhs);
    if (!d.allFinite()) return false;
    v += m.pad(d.head(n));
    lambda += d.tail(2);
  }
  const auto jg = constraint_gradients(v);
  const Vec3 grad = grad_f(v) + jg * lambda;
  return constraints(v).cwiseAbs().maxCoeff() < 1e-12 && m.cut(grad).norm() < 1e-9;
}

struct StartResult {
  Vec3 v;
  bool converged = false;
};

StartResult optimize_from(Vec3 v, const Masked& m) {
  if (m.fix_z) v[2] = 0.0;
  Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
  double mu = 10.0;
  double prev = constraints(v).norm();
  for (int outer = 0; outer < 60; ++outer) {
    v = al_inner(v, lambda, mu, m);
    const Eigen::Vector2d g = constraints(v);
    lambda += mu * g;
    if (g.norm() < 1e-10) break;
    if (g.norm() > 0.25 * prev) mu = std::min(mu * 10.0, 1e8);
    prev = g.norm();
  }
  StartResult r{v, false};
  // Feasible points of the z = 0 system are isolated, so the Lagrangian
  // stationarity condition is dropped there.
  if (m.fix_z) {
    for (int it = 0; it < 30; ++it) {
      const Eigen::Vector2d g = constraints(r.v);
      const Eigen::Matrix2d j = constraint_gradients(r.v).topRows(2).transpose();
      const Eigen::Vector2d d = j.colPivHouseholderQr().solve(-g);
      if (!d.allFinite()) break;
      r.v.head(2) += d;
    }
    r.converged = constraints(r.v).cwiseAbs().maxCoeff() < 1e-12;
  } else {
    r.converged = kkt_polish(r.v, lambda, m);
  }
  return r;
}

std::array<double, 3> feasible_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::bernoulli_distribution branch(0.5);
  const bool flat = branch(rng);
  const double t = angle(rng);
  const double c = std::cos(t), s = std::sin(t);
  if (flat) {
    const double x = c / std::sqrt(2.0);
    return {x, s / std::sqrt(2.0), -x};
  }
  const double r = 1.0 / std::sqrt(2 * c * c - 4 * c * s + 6 * s * s);
  return {r * c, r * s, r * c - 2 * r * s};
}

}  // namespace

double pc_constraint_residual(double x, double y, double z) noexcept {
  const double f0 = x * x + y * y;
  const double r1 = std::abs(y * y + z * z - (1.0 - f0));
  const double r2 = std::abs(2.0 * (x * y + y * z) - (2.0 * f0 - 1.0));
  return std::max(r1, r2);
}

std::array<double, 3> random_feasible_pc_point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return feasible_point(rng);
}

PcSolution pc_optimize(const PcOptimizeOptions& options) {
  std::vector<std::array<double, 3>> starts = options.starts;
  if (starts.empty()) {
    if (options.random_starts < 1) {
      throw Error(ErrorCode::InvalidArgument, "random_starts must be positive");
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    for (int i = 0; i < options.random_starts; ++i) {
      if (options.fix_z_zero) {
        const double x = box(rng);
        starts.push_back({x, box(rng), 0.0});
      } else {
        starts.push_back(feasible_point(rng));
      }
    }
  }

  const Masked m{options.fix_z_zero};
  PcSolution best;
  best.f0_sq = -1.0;
  std::vector<double> objectives;
  for (const auto& s : starts) {
    StartResult r = optimize_from(Vec3(s[0], s[1], s[2]), m);
    if (!r.converged) continue;
    // The system is invariant under (x,y,z) -> -(x,y,z); report x >= 0.
    if (r.v[0] < 0.0 || (r.v[0] == 0.0 && r.v[1] < 0.0)) r.v = -r.v;
    const double f = r.v[0] * r.v[0] + r.v[1] * r.v[1];
    objectives.push_back(f);
    if (f > best.f0_sq + 1e-12) {
      best.x = r.v[0] + 0.0;  // no negative zeros in reports
      best.y = r.v[1] + 0.0;
      best.z = r.v[2] + 0.0;
      best.f0_sq = f;
    }
  }
  if (objectives.empty()) {
    throw Error(ErrorCode::ConvergenceFailure, "no start reached a feasible stationary point");
  }
  best.starts = static_cast<int>(starts.size());
  best.starts_converged = static_cast<int>(objectives.size());
  best.starts_at_best = static_cast<int>(std::count_if(
      objectives.begin(), objectives.end(),
      [&](double f) { return std::abs(f - best.f0_sq) < 1e-9; }));
  best.constraint_residual = pc_constraint_residual(best.x, best.y, best.z);
  return best;
}

PcSolution bh_from_pc_system() {
  PcOptimizeOptions opts;
  opts.fix_z_zero = true;
  opts.random_starts = 32;
  return pc_optimize(opts);
}

}  // namespace qclone
