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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "qclone/averaging.hpp"
#include "qclone/machines.hpp"
#include "qclone/prepsolver.hpp"
#include "qclone/synth.hpp"
#include "qclone/table2.hpp"
#include "support.hpp"

using namespace qclone;
using qtest::kPi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome result() const {
    Outcome o = out_;
    std::ostringstream d;
    const auto& parts = out_.pass ? notes_ : failures_;
    for (std::size_t i = 0; i < parts.size(); ++i) d << (i ? "; " : "") << parts[i];
    if (!out_.pass && !notes_.empty()) {
      d << " | measured:";
      for (const auto& n : notes_) d << " " << n << ";";
    }
    o.detail = d.str();
    return o;
  }

 private:
  Outcome out_;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Outcome c1() {
  Criterion c;
  const FidelityStats eq = average_fidelity(Machine::one_op(), MeasureKind::EquatorialUniform);
  const FidelityStats po = average_fidelity(Machine::one_op(), MeasureKind::PolarUniform);
  c.require(std::abs(eq.mean_a - 0.75) < 1e-9 && std::abs(eq.mean_b - 0.75) < 1e-9, "equatorial mean");
  c.require(std::abs(po.mean_a - 2.0 / 3.0) < 1e-9 && std::abs(po.mean_b - 2.0 / 3.0) < 1e-9, "polar mean");
  c.note("equatorial " + g(eq.mean_a) + ", polar " + g(po.mean_a));
  return c.result();
}

Outcome c2() {
  Criterion c;
  double worst = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double th = 2 * kPi * k / 256;
    const PureState psi = equatorial_qubit(th);
    const CloneOutput out = one_op_clone(psi);
    const double formula = std::pow(std::cos(th), 4) + std::pow(std::sin(th), 4);
    worst = std::max({worst, std::abs(fidelity(psi, out.clone_a) - formula),
                      std::abs(fidelity(psi, out.clone_b) - formula)});
  }
  c.require(worst < 1e-12, "pointwise deviation " + g(worst));
  c.note("max deviation " + g(worst) + " over 256 angles");
  return c.result();
}

Outcome c3() {
  Criterion c;
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double ph = 2 * kPi * k / 64;
    const double cs = std::cos(ph) * std::sin(ph);
    const FidelityStats st = average_fidelity(Machine::two_op(ph), MeasureKind::PolarUniform);
    const double fa = (2.0 / 3.0) * (cs + 1);
    const double fb = (kPi / 4) * cs + (2.0 / 3.0) * std::pow(std::cos(ph), 2) +
                      (1.0 / 3.0) * std::pow(std::sin(ph), 2);
    worst = std::max({worst, std::abs(st.mean_a - fa), std::abs(st.mean_b - fb)});
  }
  c.require(worst < 1e-6, "closed-form deviation " + g(worst));
  c.note("max deviation " + g(worst) + " over 64 phi");
  return c.result();
}

Outcome c4() {
  Criterion c;
  for (MeasureKind kind : {MeasureKind::EquatorialUniform, MeasureKind::PolarUniform}) {
    const FidelityStats st = average_fidelity(Machine::two_op(kPi / 4), kind);
    c.require(st.var_a < 1e-12 && std::abs(st.mean_a - 1) < 1e-12, "phi=pi/4 F_a not constant 1");
    const FidelityStats anti = average_fidelity(Machine::two_op(kPi / 2), kind);
    c.require(anti.correlation && std::abs(*anti.correlation + 1) < 1e-9,
              "phi=pi/2 correlation under " + std::string(to_string(kind)));
  }
  double proj = 0.0, same = 0.0;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 256; ++k) {
    const PureState eq = equatorial_qubit(2 * kPi * k / 256);
    proj = std::max(proj, projector_distance(two_op_clone(eq, kPi / 4).joint,
                                             tensor(eq, equatorial_qubit(kPi / 4))));
    const PureState psi = qtest::haar(rng);
    same = std::max(same, qtest::max_abs(qtest::vec(two_op_clone(psi, 0).joint) -
                                         qtest::vec(one_op_clone(psi).joint)));
  }
  c.require(proj < 1e-10, "phi=pi/4 output differs from input product " + g(proj));
  c.require(same < 1e-12, "phi=0 differs from one-op " + g(same));

  std::ostringstream out, err;
  std::ostringstream phi;
  phi.precision(17);
  phi << 3 * kPi / 2;
  const int code = cli::run_cli({"run", "two-op", "--theta", "0.3", "--phi", phi.str(), "--averages",
                                 "--measure", "polar"},
                                out, err);
  c.require(code == 0, "run two-op at 3pi/2 failed");
  if (code == 0) {
    const auto j = nlohmann::json::parse(out.str());
    const double ma = j["averages"]["mean_a"], mb = j["averages"]["mean_b"];
    c.require(std::abs(ma - 2.0 / 3.0) < 1e-9 && std::abs(mb - 1.0 / 3.0) < 1e-9, "3pi/2 report values");
    c.require(j.contains("note"), "3pi/2 erratum not flagged");
    c.note("3pi/2 polar averages (" + g(ma) + ", " + g(mb) + "), flagged");
  }
  return c.result();
}

Outcome c5() {
  Criterion c;
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const PureState psi = qtest::haar(rng);
    const CloneOutput out = bh_clone(psi);
    worst = std::max({worst, std::abs(fidelity(psi, out.clone_a) - 5.0 / 6.0),
                      std::abs(fidelity(psi, out.clone_b) - 5.0 / 6.0)});
  }
  c.require(worst < 1e-10, "Haar fidelity deviation " + g(worst));
  const PureState probe = equatorial_qubit(0.3);
  const CloneOutput out = bh_clone(probe);
  const DecompositionCoeffs d = orthogonal_decomposition(out.clone_a, probe);
  c.require(std::abs(d.f0_sq - 5.0 / 6.0) < 1e-9 && std::abs(d.f2_sq - 1.0 / 6.0) < 1e-9, "decomposition");
  c.require(std::abs(scaling_factor(d) - 2.0 / 3.0) < 1e-9, "scaling factor");

  // Ancilla against (1/3) rho0 + (1/3) rho1 + (1/3) rho2, rho1 = sigma_1 psi0.
  double anc = 0.0;
  double anc_f0 = 0.0, anc_f2 = 0.0;
  for (int k = 0; k < 64; ++k) {
    const PureState psi = equatorial_qubit(2 * kPi * k / 64);
    const CloneOutput o = bh_clone(psi);
    const ComplexMatrix target = (density_of(psi).matrix() + density_of(pauli_apply(1, psi, 0)).matrix() +
                                  density_of(orthogonal_state(psi)).matrix()) /
                                 3.0;
    anc = std::max(anc, frobenius_distance(o.ancilla->matrix(), target));
    if (k == 3) {
      const DecompositionCoeffs a = orthogonal_decomposition(*o.ancilla, psi);
      anc_f0 = a.f0_sq;
      anc_f2 = a.f2_sq;
    }
  }
  c.require(anc < 1e-9, "ancilla (1/3,1/3,1/3) residual " + g(anc));
  c.note("clone fidelity dev " + g(worst) + ", (f0^2,f2^2)=(" + g(d.f0_sq) + "," + g(d.f2_sq) + "), s=" +
         g(scaling_factor(d)) + ", ancilla = " + g(anc_f0) + " rho0 + " + g(anc_f2) + " rho2");
  return c.result();
}

Outcome c6() {
  Criterion c;
  const double f = 0.5 + 1 / std::sqrt(8.0);
  double worst = 0.0, orig = 0.0;
  for (int k = 0; k < 256; ++k) {
    const PureState psi = equatorial_qubit(2 * kPi * k / 256);
    const CloneOutput out = pc_clone(psi);
    worst = std::max({worst, std::abs(fidelity(psi, out.clone_a) - f), std::abs(fidelity(psi, out.clone_b) - f)});
    const DecompositionCoeffs d = orthogonal_decomposition(*out.original_channel, psi);
    orig = std::max({orig, std::abs(d.f0_sq - 0.75), std::abs(d.f2_sq - 0.25)});
  }
  c.require(worst < 1e-10, "clone fidelity deviation " + g(worst));
  c.require(orig < 1e-9, "original channel deviation " + g(orig));
  c.note("fidelity dev " + g(worst) + ", original (3/4,1/4) dev " + g(orig));
  return c.result();
}

Outcome c7() {
  Criterion c;
  const double r8 = 1 / std::sqrt(8.0);
  const PcSolution s = pc_optimize();
  const double dev = std::max({std::abs(s.f0_sq - (0.5 + r8)), std::abs(s.x - (0.5 + r8)),
                               std::abs(s.y - r8), std::abs(s.z - (0.5 - r8))});
  c.require(dev < 1e-6, "optimum deviation " + g(dev));
  c.require(s.starts == 100 && s.starts_at_best == 100,
            "starts at optimum " + std::to_string(s.starts_at_best) + "/" + std::to_string(s.starts));
  const PcSolution bh = bh_from_pc_system();
  c.require(std::abs(bh.f0_sq - 5.0 / 6.0) < 1e-9, "z=0 f0^2 " + g(bh.f0_sq));
  c.note("f0^2 " + g(s.f0_sq) + " (" + std::to_string(s.starts_at_best) + "/100 starts), z=0 f0^2 " +
         g(bh.f0_sq));
  return c.result();
}

Outcome c8() {
  Criterion c;
  const PrepCoeffs bh({std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 6.0), std::sqrt(1.0 / 6.0), 0.0});
  const double c13 = 0.5 * (1 + 1 / std::sqrt(2.0)), c2 = 0.5 + std::sqrt(2.0) / 3;
  bool closed = false;
  for (const auto& b : closed_form_cos_squared(bh)) {
    closed = closed || (std::abs(b.cos2_theta1 - c13) < 1e-9 && std::abs(b.cos2_theta3 - c13) < 1e-9 &&
                        std::abs(b.cos2_theta2 - c2) < 1e-9);
  }
  c.require(closed, "BH closed-form cos^2 values");
  bool verified = false;
  for (const auto& s : solve_prep_angles(bh)) {
    const double a1 = std::pow(std::cos(s.angles.theta1), 2), a2 = std::pow(std::cos(s.angles.theta2), 2),
                 a3 = std::pow(std::cos(s.angles.theta3), 2);
    verified = verified || (std::abs(a1 - c13) < 1e-9 && std::abs(a3 - c13) < 1e-9 &&
                            std::abs(a2 - c2) < 1e-9 &&
                            coeff_residual(reconstruct_coeffs(s.angles), bh) < 1e-9);
  }
  c.require(verified, "BH triple not re-verified by reconstruction");

  const double r8 = 1 / std::sqrt(8.0);
  bool pc = false;
  for (const auto& s : solve_prep_angles(PrepCoeffs({0.5 + r8, r8, r8, 0.5 - r8}))) {
    pc = pc || (std::abs(s.angles.theta1 - kPi / 8) < 1e-9 && std::abs(s.angles.theta2) < 1e-9 &&
                std::abs(s.angles.theta3 - kPi / 8) < 1e-9);
  }
  c.require(pc, "(pi/8, 0, pi/8) missing");

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  int ok = 0;
  for (int k = 0; k < 1000; ++k) {
    const PrepCoeffs coeffs = reconstruct_coeffs({angle(rng), angle(rng), angle(rng)});
    for (const auto& s : solve_prep_angles(coeffs)) {
      if (coeff_residual(reconstruct_coeffs(s.angles), coeffs) < 1e-9) {
        ++ok;
        break;
      }
    }
  }
  c.require(ok == 1000, "round trip " + std::to_string(ok) + "/1000");
  c.note("BH cos^2 verified, PC (pi/8,0,pi/8) found, round trip " + std::to_string(ok) + "/1000");
  return c.result();
}

Outcome c9() {
  Criterion c;
  const BasisBijection cloning_map({0, 5, 6, 3, 4, 1, 2, 7});
  c.require(anf_of(cloning_map, 0).to_string() == "x^y^z" && anf_of(cloning_map, 1).to_string() == "y" &&
                anf_of(cloning_map, 2).to_string() == "z",
            "cloning map ANF");
  c.require(bijection_of(synthesize_cnots(cloning_map)) == bijection_of(parse_operator_product("P10P20", 3)),
            "cloning map circuit");
  int ok = 0, total = 0;
  for (int m = 0; m < 512; ++m) {
    const int rows[3] = {m >> 6, (m >> 3) & 7, m & 7};
    for (int cst = 0; cst < 8; ++cst) {
      std::array<int, 8> img{};
      for (int v = 0; v < 8; ++v) {
        int out = 0;
        for (int r = 0; r < 3; ++r) {
          out |= ((std::popcount(static_cast<unsigned>(rows[r] & v)) & 1) ^ ((cst >> (2 - r)) & 1)) << (2 - r);
        }
        img[static_cast<std::size_t>(v)] = out;
      }
      std::array<int, 8> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::array<int, 8>{0, 1, 2, 3, 4, 5, 6, 7}) continue;
      ++total;
      const BasisBijection bij(img);
      try {
        if (bijection_of(synthesize_cnots(bij)) == bij) ++ok;
      } catch (const Error&) {
      }
    }
  }
  c.require(total == 1344 && ok == 1344, "affine synthesis " + std::to_string(ok) + "/" + std::to_string(total));
  bool nonaffine = false;
  try {
    synthesize_cnots(BasisBijection({0, 1, 2, 3, 4, 5, 7, 6}));
  } catch (const Error& e) {
    nonaffine = e.code() == ErrorCode::NonAffine;
  }
  c.require(nonaffine, "Toffoli not rejected as NonAffine");
  c.note("cloning map ANF (x^y^z, y, z), " + std::to_string(ok) + "/1344 affine maps, Toffoli NonAffine");
  return c.result();
}

Outcome c10() {
  Criterion c;
  int passed = 0;
  std::string failing;
  for (const RowReport& r : verify_table2_all()) {
    if (r.passed()) {
      ++passed;
      continue;
    }
    std::string what;
    if (!r.angles_ok) what += "angles,";
    if (!r.fidelity_ok()) what += "fidelity,";
    if (!r.swap_ok) what += "swap,";
    if (!r.synthesis_ok()) what += "synthesis,";
    what.pop_back();
    failing += (failing.empty() ? "" : " ") + std::string("row ") + std::to_string(r.index) + "(" + what + ")";
  }
  c.require(passed == 12, std::to_string(passed) + "/12 rows pass; failing " + failing);
  std::ostringstream out, err;
  const int code = cli::run_cli({"verify", "table2"}, out, err);
  c.require(code == 0, "verify table2 exit " + std::to_string(code));
  c.note(std::to_string(passed) + "/12 rows, verify exit " + std::to_string(code));
  return c.result();
}

Outcome c11() {
  Criterion c;
  const auto f = [](double th) { return fidelity(equatorial_qubit(th), one_op_clone(equatorial_qubit(th)).clone_a); };
  c.require(std::abs(f(0) - 1) < 1e-12 && std::abs(f(kPi / 2) - 1) < 1e-12, "basis inputs not exact");
  c.require(std::abs(f(kPi / 4) - 0.5) < 1e-12, "F(pi/4) = " + g(f(kPi / 4)));
  c.note("F(0)=" + g(f(0)) + ", F(pi/2)=" + g(f(kPi / 2)) + ", F(pi/4)=" + g(f(kPi / 4)));
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"one-op average fidelity", c1},   {"one-op pointwise fidelity", c2},
      {"two-op polar averages", c3},     {"two-op special cases", c4},
      {"BH machine", c5},                {"PC machine", c6},
      {"PC optimizer", c7},              {"prep solver", c8},
      {"synthesis", c9},                 {"table2 verification", c10},
      {"no-cloning sanity", c11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
