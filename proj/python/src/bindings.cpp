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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "qclone/averaging.hpp"
#include "qclone/errors.hpp"
#include "qclone/machines.hpp"
#include "qclone/prepsolver.hpp"
#include "qclone/synth.hpp"
#include "qclone/table2.hpp"

namespace py = pybind11;
using namespace qclone;

namespace {

Machine machine_of(const std::string& name, double phi) {
  const auto m = parse_machine(name, phi);
  if (!m) throw Error(ErrorCode::InvalidArgument, "unknown machine '" + name + "'");
  return *m;
}

MeasureKind measure_of(const std::string& name) {
  const auto k = parse_measure(name);
  if (!k) throw Error(ErrorCode::InvalidArgument, "unknown measure '" + name + "'");
  return *k;
}

std::vector<Complex> amplitudes(const PureState& psi) {
  std::vector<Complex> v(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) v[i] = psi[i];
  return v;
}

py::dict clone_dict(const CloneOutput& out) {
  py::dict d;
  d["joint"] = amplitudes(out.joint);
  d["clone_a"] = out.clone_a.matrix();
  d["clone_b"] = out.clone_b.matrix();
  d["clone_wires"] = py::make_tuple(out.clone_a_wire, out.clone_b_wire);
  d["original_channel"] = out.original_channel ? py::cast(out.original_channel->matrix()) : py::none();
  d["ancilla"] = out.ancilla ? py::cast(out.ancilla->matrix()) : py::none();
  return d;
}

std::array<int, kSynthStates> images_of(const std::vector<int>& images) {
  return BasisBijection::from_images(images).images();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum cloning machine workbench";
  m.attr("__version__") = QCLONE_VERSION;

  static py::exception<Error> error(m, "QcloneError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object instance = exc(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  m.def(
      "equatorial_qubit", [](double theta) { return amplitudes(equatorial_qubit(theta)); }, py::arg("theta"));

  m.def(
      "clone",
      [](const std::string& machine, std::vector<Complex> psi, double phi) {
        return clone_dict(clone(machine_of(machine, phi), PureState(std::move(psi))));
      },
      py::arg("machine"), py::arg("psi"), py::arg("phi") = 0.0,
      "Run a machine on a 1-qubit state given as [alpha, beta].");

  m.def(
      "pointwise_fidelities",
      [](const std::string& machine, double theta, double phi) {
        const PointwiseFidelities f = pointwise_fidelities(machine_of(machine, phi), theta);
        return py::make_tuple(f.a, f.b, f.original ? py::cast(*f.original) : py::none());
      },
      py::arg("machine"), py::arg("theta"), py::arg("phi") = 0.0);

  m.def(
      "average_fidelity",
      [](const std::string& machine, const std::string& measure, double phi, int order,
         std::size_t samples, std::uint64_t seed) {
        const SamplingPlan plan =
            samples > 0 ? SamplingPlan::monte_carlo(samples, seed) : SamplingPlan::quadrature(order);
        const FidelityStats s = average_fidelity(machine_of(machine, phi), measure_of(measure), plan);
        py::dict d;
        d["mean_a"] = s.mean_a;
        d["mean_b"] = s.mean_b;
        d["var_a"] = s.var_a;
        d["var_b"] = s.var_b;
        d["correlation"] = s.correlation ? py::cast(*s.correlation) : py::none();
        return d;
      },
      py::arg("machine"), py::arg("measure") = "polar", py::arg("phi") = 0.0, py::arg("order") = 128,
      py::arg("samples") = 0, py::arg("seed") = 0);

  m.def(
      "orthogonal_decomposition",
      [](const ComplexMatrix& rho, std::vector<Complex> psi) {
        const DecompositionCoeffs d = orthogonal_decomposition(DensityMatrix(rho), PureState(std::move(psi)));
        return py::make_tuple(d.f0_sq, d.f2_sq);
      },
      py::arg("rho"), py::arg("psi"));

  m.def(
      "reconstruct_coeffs",
      [](double t1, double t2, double t3) { return reconstruct_coeffs({t1, t2, t3}).c; },
      py::arg("theta1"), py::arg("theta2"), py::arg("theta3"));

  m.def(
      "solve_prep_angles",
      [](std::array<double, 4> coeffs, bool normalize) {
        const PrepCoeffs c = normalize ? PrepCoeffs::normalized(coeffs) : PrepCoeffs(coeffs);
        py::list out;
        for (const auto& s : solve_prep_angles(c)) {
          out.append(py::make_tuple(s.angles.theta1, s.angles.theta2, s.angles.theta3, s.residual));
        }
        return out;
      },
      py::arg("coeffs"), py::arg("normalize") = false,
      "All verified (theta1, theta2, theta3, residual) tuples, radians.");

  m.def(
      "pc_optimize",
      [](int starts, std::uint64_t seed, bool fix_z) {
        PcOptimizeOptions opt;
        opt.random_starts = starts;
        opt.seed = seed;
        opt.fix_z_zero = fix_z;
        const PcSolution s = pc_optimize(opt);
        py::dict d;
        d["x"] = s.x;
        d["y"] = s.y;
        d["z"] = s.z;
        d["f0_sq"] = s.f0_sq;
        d["constraint_residual"] = s.constraint_residual;
        d["starts_at_best"] = s.starts_at_best;
        return d;
      },
      py::arg("starts") = 100, py::arg("seed") = 20260101, py::arg("fix_z") = false);

  m.def(
      "anf",
      [](const std::vector<int>& images, int bit) {
        return anf_of(BasisBijection(images_of(images)), bit).to_string();
      },
      py::arg("images"), py::arg("bit"));

  m.def(
      "synthesize",
      [](const std::vector<int>& images) {
        return format_operator_product(synthesize_cnots(BasisBijection(images_of(images))));
      },
      py::arg("images"), "CNOT network for a basis permutation, as an operator product.");

  m.def(
      "circuit_images",
      [](const std::string& product) {
        return bijection_of(parse_operator_product(product, kSynthBits)).images();
      },
      py::arg("product"));

  m.def(
      "parse_affine_forms", [](const std::string& text) { return parse_affine_forms(text).images(); },
      py::arg("text"));

  m.def(
      "verify_table2",
      [](int row) {
        const RowReport r = verify_table2(table2_row(row));
        py::dict d;
        d["index"] = r.index;
        d["angles_ok"] = r.angles_ok;
        d["fidelity_ok"] = r.fidelity_ok();
        d["swap_ok"] = r.swap_ok;
        d["synthesis_ok"] = r.synthesis_ok();
        d["passed"] = r.passed();
        d["solved"] = py::make_tuple(r.solved.theta1, r.solved.theta2, r.solved.theta3);
        return d;
      },
      py::arg("row"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the qclone command line; returns (exit_code, stdout, stderr).");
}
