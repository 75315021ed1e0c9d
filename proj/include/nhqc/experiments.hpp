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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/device_model.hpp"
#include "nhqc/holonomy.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/metrics.hpp"

namespace nhqc {

enum class ScenarioName { fig2_up, fig3_swaplike, fig4_sequence, custom };
enum class SimulationMode { full, effective };

std::string_view to_string(ScenarioName name);
std::string_view to_string(SimulationMode mode);

/// 2 pi x {0, 1, ..., 10} kHz.
std::vector<double> default_kappa_grid();

struct ScenarioSpec {
  ScenarioName name = ScenarioName::fig2_up;
  SimulationMode mode = SimulationMode::full;
  // Device (and, for custom, [gate]) text. Empty: the reference lattice.
  std::string config_text;
  std::vector<double> kappas = default_kappa_grid();  // rad/s
  int grid_1q = 1001;
  int grid_2q = 100;
  SynthesisOptions synthesis{10, true};
  bool sqrt2_relaxation = false;
  bool include_higher_exchange = true;
  // Keep couplings of qubits outside the active gate switched on.
  bool spectator_couplings = false;
  StepControl step;
  double fig4_angle = kPi / 4;  // input angle of the three-gate state fidelity
};

/// Everything a sweep needs: model, gates, time windows per mode and the
/// ideal map between input and output subspaces.
struct ScenarioPlan {
  ScenarioName name = ScenarioName::custom;
  LatticeModel model;
  std::vector<GateRecipe> recipes;
  PulseSequence sequence;  // in the scenario's mode
  std::vector<StateVector> inputs;
  std::vector<StateVector> outputs;
  ComplexMatrix ideal;                      // outputs x inputs
  std::vector<Complex> initial;             // coefficients of the state-fidelity input
  int grid_inputs = 1;                      // 1: single-qubit grid, 2: two-qubit grid
  std::vector<std::pair<std::string, std::string>> params;
};

/// Builds the plan. Throws ConfigError when a device config contradicts the
/// pinned parameters of a named scenario, UnsolvableDuration when a gate has
/// no admissible duration.
ScenarioPlan plan_scenario(const ScenarioSpec& spec);

/// Pulse windows for `recipes` on `model`: clock continuous within a gate,
/// each gate starting from its own zero. Unless `spectator_couplings`, only
/// edges between a gate's own qubits act during that gate.
PulseSequence build_sequence(const LatticeModel& model, const std::vector<GateRecipe>& recipes, SimulationMode mode,
                             const FrameOptions& frame = {}, bool spectator_couplings = false);

struct ScenarioResult {
  FidelityCurve curve;
  HygieneReport hygiene;
  std::vector<std::pair<std::string, std::string>> params;
};

/// Sweeps the plan over spec.kappas (points evaluated concurrently, reduced in
/// order).
ScenarioResult run_plan(const ScenarioPlan& plan, const ScenarioSpec& spec);

ScenarioResult run_fig2(ScenarioSpec spec);
ScenarioResult run_fig3(ScenarioSpec spec);
ScenarioResult run_fig4(ScenarioSpec spec);
ScenarioResult run_custom(ScenarioSpec spec);
ScenarioResult run_scenario(const ScenarioSpec& spec);

/// `# params: ...` header, column line, one row per kappa.
std::string to_csv(const ScenarioResult& result);

struct HolonomyCheck {
  std::string gate;
  double parallel_transport = 0.0;  // rad/s, max ||P U^† H U P||_F over samples
  double projector_residual = 0.0;  // rad/s, max ||P H P||_F over samples
  double cyclic_overlap = 0.0;      // min ||P U b||^2
  double auxiliary_excitation = 0.0;
};

/// Parallel-transport and cyclicity diagnostics of every gate in the plan, in
/// `mode`. `samples_per_segment` propagator samples per segment.
std::vector<HolonomyCheck> check_holonomy(const ScenarioPlan& plan, SimulationMode mode, const ScenarioSpec& spec,
                                          int samples_per_segment = 8);

}  // namespace nhqc
