// Copyright 2026 The hamest Authors
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
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamest/errors.hpp"
#include "hamest/feedback.hpp"
#include "hamest/noisy.hpp"
#include "hamest/spectral.hpp"

namespace py = pybind11;
using namespace hamest;

namespace {

py::object interval_dict(const std::optional<GainInterval>& gi) {
  if (!gi) return py::none();
  py::dict d;
  d["lo"] = gi->lo;
  d["hi"] = gi->hi;
  d["lo_open"] = gi->lo_open;
  d["hi_open"] = gi->hi_open;
  return d;
}

py::dict sweep_dict(const SweepResult& r) {
  py::dict d;
  d["betas"] = r.betas;
  d["qfi_controlled"] = r.qfi_controlled;
  d["qfi_uncontrolled"] = r.qfi_uncontrolled;
  d["gain_interval"] = interval_dict(r.gain_interval);
  return d;
}

FeedbackSchedule schedule_for(const HamiltonianFamily& f, int segments, double total_time, std::optional<double> x_hat) {
  if (x_hat) return optimal_schedule(f, Estimate{*x_hat}, segments, total_time);
  return FeedbackSchedule::identity(segments, total_time, f.dim());
}

UnitaryFamily evolution(const HamiltonianFamily& f, double total_time) {
  return [f, total_time](double x) { return f.unitary_at(x, total_time); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum Fisher information of parametrised Hamiltonians under feedback control";

  static py::exception<Error> error(m, "HamestError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object instance = exc(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<HamiltonianFamily>(m, "HamiltonianFamily")
      .def_static("direction_field", &HamiltonianFamily::direction_field, py::arg("B") = 1.0)
      .def_static(
          "multiplicative", [](const ComplexMatrix& h) { return HamiltonianFamily::multiplicative(HermitianMatrix(h)); },
          py::arg("H"))
      .def_static(
          "trig_matrix",
          [](const ComplexMatrix& a0, const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& harmonics) {
            std::vector<Harmonic> hs;
            for (const auto& [c, s] : harmonics) hs.push_back({HermitianMatrix(c), HermitianMatrix(s)});
            return HamiltonianFamily::trig_matrix(HermitianMatrix(a0), std::move(hs));
          },
          py::arg("A0"), py::arg("harmonics"))
      .def_static(
          "from_json", [](const std::string& text) { return family_from_json(nlohmann::json::parse(text)); },
          py::arg("text"))
      .def("to_json", [](const HamiltonianFamily& f) { return family_to_json(f).dump(); })
      .def_property_readonly("dim", &HamiltonianFamily::dim)
      .def_property_readonly("kind", &HamiltonianFamily::kind_name)
      .def("evaluate", [](const HamiltonianFamily& f, double x) { return f.evaluate(x).matrix(); }, py::arg("x"))
      .def("derivative", [](const HamiltonianFamily& f, double x) { return f.derivative(x).matrix(); }, py::arg("x"))
      .def(
          "unitary_at", [](const HamiltonianFamily& f, double x, double t) { return f.unitary_at(x, t).matrix(); },
          py::arg("x"), py::arg("t"));

  m.def(
      "eigen_angles", [](const ComplexMatrix& u) { return eigen_angles(u).angles; }, py::arg("u"),
      "Angles theta in (-pi, pi] with exp(-i theta) an eigenvalue, descending.");
  m.def(
      "c_te",
      [](const ComplexMatrix& u) {
        const SpreadReport r = c_te(u);
        py::dict d;
        d["c_te"] = r.c_te;
        d["spread"] = r.spread;
        d["wraparound"] = r.wraparound;
        return d;
      },
      py::arg("u"));
  m.def(
      "min_fidelity_over_inputs", [](const ComplexMatrix& u) { return min_fidelity_over_inputs(UnitaryMatrix(u)); },
      py::arg("u"));
  m.def(
      "hermitian_eigenvalues", [](const ComplexMatrix& a) { return RealVector(hermitian_eig(a).eigenvalues); },
      py::arg("a"), "Eigenvalues of a Hermitian matrix, descending.");
  m.def(
      "expm_i", [](const ComplexMatrix& h, double t) { return expm_i(HermitianMatrix(h), t).matrix(); }, py::arg("h"),
      py::arg("t"), "exp(-i h t) for Hermitian h.");
  m.def(
      "fidelity", [](const ComplexMatrix& a, const ComplexMatrix& b) { return fidelity(DensityMatrix(a), DensityMatrix(b)); },
      py::arg("rho1"), py::arg("rho2"));
  m.def(
      "bures_distance",
      [](const ComplexMatrix& a, const ComplexMatrix& b) { return bures_distance(DensityMatrix(a), DensityMatrix(b)); },
      py::arg("rho1"), py::arg("rho2"));

  m.def(
      "channel_qfi",
      [](const HamiltonianFamily& f, double x, double total_time, double dx, const std::string& method) {
        const UnitaryFamily u = evolution(f, total_time);
        if (method == "generator") return channel_qfi_generator(u, x, dx).value;
        if (method != "cte_fd") throw Error(ErrorKind::InvalidArgument, "method must be cte_fd or generator");
        return channel_qfi_fd(u, x, dx).value;
      },
      py::arg("family"), py::arg("x"), py::arg("T") = 1.0, py::arg("dx") = kDefaultDx, py::arg("method") = "cte_fd",
      "Maximal single-use Fisher information of x -> exp(-i H(x) T).");
  m.def(
      "optimal_probe",
      [](const HamiltonianFamily& f, double x, double total_time, double dx) {
        return ComplexVector(optimal_probe(evolution(f, total_time), x, dx).amplitudes());
      },
      py::arg("family"), py::arg("x"), py::arg("T") = 1.0, py::arg("dx") = kDefaultDx);
  m.def(
      "pure_state_qfi",
      [](const HamiltonianFamily& f, const ComplexVector& probe, double x, double total_time, double dx) {
        return pure_state_qfi(evolution(f, total_time), Probe::normalized(probe), x, dx).value;
      },
      py::arg("family"), py::arg("probe"), py::arg("x"), py::arg("T") = 1.0, py::arg("dx") = kDefaultDx);
  m.def(
      "sld_qfi",
      [](const ComplexMatrix& rho, const ComplexMatrix& drho) {
        return mixed_state_qfi_sld(DensityMatrix(rho), HermitianMatrix(drho)).value;
      },
      py::arg("rho"), py::arg("drho"));
  m.def("precision_bound", &precision_bound, py::arg("qfi"), py::arg("n") = 1);

  m.def(
      "total_unitary",
      [](const HamiltonianFamily& f, double x, int segments, double total_time, std::optional<double> x_hat) {
        return total_unitary(f, x, schedule_for(f, segments, total_time, x_hat)).matrix();
      },
      py::arg("family"), py::arg("x"), py::arg("m"), py::arg("T") = 1.0, py::arg("x_hat") = py::none(),
      "Product of m segments; optimal controls built from x_hat, identity controls when x_hat is None.");
  m.def(
      "controlled_qfi",
      [](const HamiltonianFamily& f, double x, int segments, double total_time, std::optional<double> x_hat,
         double dx) { return controlled_qfi(f, x, schedule_for(f, segments, total_time, x_hat), dx).value; },
      py::arg("family"), py::arg("x"), py::arg("m"), py::arg("T") = 1.0, py::arg("x_hat") = py::none(),
      py::arg("dx") = kDefaultDx);
  m.def(
      "beta_sweep",
      [](const HamiltonianFamily& f, double x_true, int segments, double total_time, const std::vector<double>& betas,
         double dx, unsigned threads) {
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = beta_sweep(f, x_true, segments, total_time, betas, dx, threads);
        }
        return sweep_dict(r);
      },
      py::arg("family"), py::arg("x_true") = 1.0, py::arg("m") = 5, py::arg("T") = 1.0, py::arg("betas"),
      py::arg("dx") = kDefaultDx, py::arg("threads") = 0);
  m.def(
      "gain_interval",
      [](const HamiltonianFamily& f, double x_true, int segments, double total_time, double dx,
         std::pair<double, double> range, unsigned threads) {
        GainInterval g;
        {
          py::gil_scoped_release release;
          g = gain_interval(f, x_true, segments, total_time, dx, range, threads);
        }
        return interval_dict(g);
      },
      py::arg("family"), py::arg("x_true") = 1.0, py::arg("m") = 5, py::arg("T") = 1.0, py::arg("dx") = kDefaultDx,
      py::arg("search_range") = std::pair<double, double>{kGainSearchMin, kGainSearchMax}, py::arg("threads") = 0);
  m.def(
      "scaling_curve",
      [](const HamiltonianFamily& f, double x, double total_time, const std::vector<int>& ms, double dx,
         unsigned threads) {
        std::vector<std::pair<int, double>> out;
        for (const auto& p : scaling_curve(f, x, total_time, ms, dx, threads)) out.emplace_back(p.segments, p.qfi);
        return out;
      },
      py::arg("family"), py::arg("x") = 1.0, py::arg("T") = 1.0, py::arg("m_values"), py::arg("dx") = kDefaultDx,
      py::arg("threads") = 0);
  m.def("universal_qfi", &universal_qfi, py::arg("family"), py::arg("x"), py::arg("T") = 1.0);

  m.def(
      "noisy_qfi",
      [](const HamiltonianFamily& f, double x, int segments, double total_time, std::optional<double> x_hat,
         double eta, const ComplexVector& probe, double dx) {
        return noisy_qfi(f, x, schedule_for(f, segments, total_time, x_hat), eta, Probe::normalized(probe), dx).value;
      },
      py::arg("family"), py::arg("x"), py::arg("m"), py::arg("T") = 1.0, py::arg("x_hat") = py::none(),
      py::arg("eta"), py::arg("probe"), py::arg("dx") = kDefaultDx);
  m.def(
      "max_noisy_qfi",
      [](const HamiltonianFamily& f, double x, int segments, double total_time, std::optional<double> x_hat,
         double eta, double dx, int azimuth_points, int polar_points, int refine_rounds) {
        const ProbeOptimum o = max_noisy_qfi(f, x, schedule_for(f, segments, total_time, x_hat), eta, dx,
                                             {azimuth_points, polar_points, refine_rounds, ProbeSearch{}.min_step});
        py::dict d;
        d["qfi"] = o.qfi.value;
        d["probe"] = ComplexVector(o.probe.amplitudes());
        d["polar"] = o.polar;
        d["azimuth"] = o.azimuth;
        return d;
      },
      py::arg("family"), py::arg("x"), py::arg("m"), py::arg("T") = 1.0, py::arg("x_hat") = py::none(),
      py::arg("eta"), py::arg("dx") = kDefaultDx, py::arg("azimuth_points") = 64, py::arg("polar_points") = 32,
      py::arg("refine_rounds") = 3);
  m.def(
      "noisy_beta_sweep",
      [](const HamiltonianFamily& f, const std::vector<double>& betas, double eta, int segments, double total_time,
         double x_true, double dx, int azimuth_points, int polar_points, int refine_rounds, unsigned threads) {
        NoisySweepConfig cfg;
        cfg.eta = eta;
        cfg.segments = segments;
        cfg.total_time = total_time;
        cfg.x_true = x_true;
        cfg.beta_grid = betas;
        cfg.dx = dx;
        cfg.search = {azimuth_points, polar_points, refine_rounds, ProbeSearch{}.min_step};
        cfg.threads = threads;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = noisy_beta_sweep(cfg, f);
        }
        return sweep_dict(r);
      },
      py::arg("family"), py::arg("betas"), py::arg("eta") = NoisySweepConfig{}.eta, py::arg("m") = 5,
      py::arg("T") = 1.0, py::arg("x_true") = 1.0, py::arg("dx") = kDefaultDx, py::arg("azimuth_points") = 64,
      py::arg("polar_points") = 32, py::arg("refine_rounds") = 3, py::arg("threads") = 0);

  m.def("linspace", &linspace, py::arg("lo"), py::arg("hi"), py::arg("steps"));
}
