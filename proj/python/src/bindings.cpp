// Copyright 2026 The nhqc Authors
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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nhqc/errors.hpp"
#include "nhqc/experiments.hpp"
#include "nhqc/frame_builder.hpp"
#include "nhqc/holonomy.hpp"
#include "nhqc/units.hpp"

namespace py = pybind11;

namespace {

nhqc::ScenarioSpec make_spec(const std::string& scenario, const std::string& mode,
                             const std::optional<std::vector<double>>& kappa_khz, const std::string& config,
                             int grid_1q, int grid_2q, int max_windings, bool sqrt2_relaxation, bool strict_branch) {
  nhqc::ScenarioSpec spec;
  if (scenario == "fig2") {
    spec.name = nhqc::ScenarioName::fig2_up;
  } else if (scenario == "fig3") {
    spec.name = nhqc::ScenarioName::fig3_swaplike;
  } else if (scenario == "fig4") {
    spec.name = nhqc::ScenarioName::fig4_sequence;
  } else if (scenario == "custom") {
    spec.name = nhqc::ScenarioName::custom;
  } else {
    throw py::value_error("unknown scenario '" + scenario + "'");
  }
  if (mode == "full") {
    spec.mode = nhqc::SimulationMode::full;
  } else if (mode == "effective") {
    spec.mode = nhqc::SimulationMode::effective;
  } else {
    throw py::value_error("mode must be 'full' or 'effective'");
  }
  if (kappa_khz) {
    spec.kappas.clear();
    for (double k : *kappa_khz) spec.kappas.push_back(nhqc::khz(k));
  }
  spec.config_text = config;
  spec.grid_1q = grid_1q;
  spec.grid_2q = grid_2q;
  spec.synthesis = nhqc::SynthesisOptions{max_windings, !strict_branch};
  spec.sqrt2_relaxation = sqrt2_relaxation;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holonomic gate simulation on transmon lattices";

  auto base = py::register_exception<nhqc::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<nhqc::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<nhqc::InvariantBreach>(m, "InvariantBreach", PyExc_RuntimeError);
  static py::exception<nhqc::UnsolvableDuration> unsolvable(m, "UnsolvableDuration", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nhqc::UnsolvableDuration& e) {
      py::object err = py::reinterpret_borrow<py::object>(unsolvable.ptr())(e.what());
      err.attr("nearest_theta") = e.nearest_theta();
      PyErr_SetObject(unsolvable.ptr(), err.ptr());
    }
  });

  m.def("bessel_j", &nhqc::bessel_j, py::arg("m"), py::arg("beta"), "Bessel function of the first kind J_m(beta).");

  m.def(
      "solve_segment_duration",
      [](double theta, const std::string& branch, int max_windings, bool allow_sign_flip) {
        nhqc::Branch b;
        if (branch == "G_I") {
          b = nhqc::Branch::G_I;
        } else if (branch == "G_z") {
          b = nhqc::Branch::G_z;
        } else {
          throw py::value_error("branch must be 'G_I' or 'G_z'");
        }
        const auto s = nhqc::solve_segment_duration(theta, b, nhqc::SynthesisOptions{max_windings, allow_sign_flip});
        py::dict out;
        out["a"] = s.a;
        out["m"] = s.m;
        out["n"] = s.n;
        out["sign_flipped"] = s.sign_flipped;
        return out;
      },
      py::arg("theta"), py::arg("branch"), py::arg("max_windings") = 10, py::arg("allow_sign_flip") = false,
      "Smallest dimensionless segment duration a for mixing angle theta.");

  m.def(
      "reference_lattice", [] { return nhqc::serialize(nhqc::reference_lattice()); },
      "Reference five-transmon device as configuration text.");

  m.def(
      "run_scenario",
      [](const std::string& scenario, const std::string& mode, std::optional<std::vector<double>> kappa_khz,
         const std::string& config, int grid_1q, int grid_2q, int max_windings, bool sqrt2_relaxation,
         bool strict_branch) {
        const auto spec = make_spec(scenario, mode, kappa_khz, config, grid_1q, grid_2q, max_windings,
                                    sqrt2_relaxation, strict_branch);
        nhqc::ScenarioResult result;
        {
          py::gil_scoped_release release;
          result = nhqc::run_scenario(spec);
        }
        py::list rows;
        for (const auto& p : result.curve.points) {
          py::dict row;
          row["kappa_over_2pi_kHz"] = nhqc::to_khz(p.kappa);
          row["state_fidelity"] = p.state_fidelity;
          row["gate_fidelity"] = p.gate_fidelity;
          row["leakage"] = p.leakage;
          rows.append(row);
        }
        py::dict out;
        out["rows"] = rows;
        out["params"] = result.params;
        out["csv"] = nhqc::to_csv(result);
        return out;
      },
      py::arg("scenario"), py::arg("mode") = "full", py::arg("kappa_khz") = py::none(), py::arg("config") = "",
      py::arg("grid_1q") = 1001, py::arg("grid_2q") = 100, py::arg("max_windings") = 10,
      py::arg("sqrt2_relaxation") = false, py::arg("strict_branch") = false,
      "Fidelity sweep of a scenario. Returns rows, params and the CSV text.");
}
