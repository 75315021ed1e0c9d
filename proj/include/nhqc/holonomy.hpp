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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/config_text.hpp"
#include "nhqc/device_model.hpp"
#include "nhqc/frame_builder.hpp"
#include "nhqc/operator_core.hpp"

namespace nhqc {

// G_I = diag{1, 1}, G_z = diag{1, -1}.
enum class Branch { G_I, G_z };

std::string_view to_string(Branch branch);

struct SynthesisOptions {
  int max_windings = 10;
  // Also accept sin(a Q) = -G_i. The gate is quadratic in G_i, so the
  // resulting unitary is unchanged while the duration can be shorter.
  bool allow_sign_flip = false;
};

struct SegmentSolution {
  double a = 0.0;  // Omega * tau / 2
  int m = 0;
  int n = 0;
  bool sign_flipped = false;
};

/// Smallest a > 0 with a cos^2(theta/4) = p + 2 pi m and a sin^2(theta/4) =
/// q + 2 pi n, (p, q) = (pi/2, pi/2) for G_I and (pi/2, 3pi/2) for G_z.
/// Throws std::invalid_argument for theta = 2 n pi or negative windings and
/// UnsolvableDuration (with the closest solvable angle) when nothing matches.
SegmentSolution solve_segment_duration(double theta, Branch branch, const SynthesisOptions& options = {});

inline double solve_segment_duration(double theta, Branch branch, int max_windings) {
  return solve_segment_duration(theta, branch, SynthesisOptions{max_windings, false}).a;
}

/// Largest deviation of (a cos^2(theta/4), a sin^2(theta/4)) from the branch
/// targets, reduced mod 2 pi.
double congruence_residual(double a, double theta, Branch branch, bool sign_flipped = false);

// ---------------------------------------------------------------------------
// Device controls
// ---------------------------------------------------------------------------

/// Modulation on a target plus resonant drive on its auxiliary.
struct SingleQubitControl {
  std::string target;
  std::string auxiliary;
  double modulation_index = 0.0;  // beta
  double modulation_phase = 0.0;  // 0, or pi for a negative exchange rate
  double drive_amplitude = 0.0;   // epsilon, rad/s
};

/// Signed effective exchange rate J_1(beta) g e^{i phase} (real for phase 0 or pi).
double effective_exchange(const LatticeModel& model, const SingleQubitControl& control);
double mixing_angle(const LatticeModel& model, const SingleQubitControl& control);
double rabi_frequency(const LatticeModel& model, const SingleQubitControl& control);

/// Control with mixing angle theta and Rabi frequency Omega on the edge
/// target-auxiliary. Throws std::domain_error when |Omega cos(theta/2)| exceeds
/// the largest reachable exchange rate.
SingleQubitControl calibrate_single_qubit(const LatticeModel& model, const std::string& target,
                                          const std::string& auxiliary, double theta, double rabi);

/// Keeps beta and resets the drive amplitude so that the mixing angle is theta.
SingleQubitControl retune_drive(const LatticeModel& model, const SingleQubitControl& control, double theta);

/// Modulations on both targets of a target-auxiliary-target chain.
struct TwoQubitControl {
  std::string target_a;
  std::string auxiliary;
  std::string target_c;
  double index_a = 0.0;
  double index_c = 0.0;
  double phase_a = 0.0;  // pi flips the sign of g'_AB
};

double two_qubit_angle(const LatticeModel& model, const TwoQubitControl& control);
double two_qubit_rate(const LatticeModel& model, const TwoQubitControl& control);

/// Control with angle vartheta and total rate g on the chain a-aux-c.
TwoQubitControl calibrate_two_qubit(const LatticeModel& model, const std::string& target_a,
                                    const std::string& auxiliary, const std::string& target_c, double vartheta,
                                    double rate);

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

enum class GateKind { rot_y, rot_z, two_qubit };

std::string_view to_string(GateKind kind);

struct SegmentSchedule {
  double duration = 0.0;      // s
  double clock_offset = 0.0;  // s, gate clock at the segment start
  std::optional<DriveSpec> drive;
  std::vector<ModulationSpec> modulations;

  friend bool operator==(const SegmentSchedule&, const SegmentSchedule&) = default;
};

struct GateRecipe {
  GateKind kind = GateKind::rot_z;
  // rot_y: theta; rot_z: gamma (theta is the mixing angle); two_qubit: vartheta, varphi.
  double theta = 0.0;
  double gamma = 0.0;
  double vartheta = 0.0;
  double varphi = 0.0;

  std::vector<std::string> targets;
  std::string auxiliary;
  std::vector<SegmentSchedule> segments;
  // On targets in {0,1}, ordered as `targets` (row-major).
  ComplexMatrix ideal_unitary;

  Branch branch = Branch::G_z;
  double a = 0.0;            // per segment, Omega tau / 2 or g T
  bool sign_flipped = false;
  double rate = 0.0;         // Omega or g, rad/s

  double total_duration() const;
};

/// Z rotation e^{-i gamma sigma_z}. Segment durations a / Omega, drive phase 0
/// then gamma.
GateRecipe make_rot_z(double gamma, const LatticeModel& model, const SingleQubitControl& control,
                      const SynthesisOptions& options = {});

/// Y rotation e^{-i theta sigma_y}; the control's mixing angle must be theta.
GateRecipe make_rot_y(double theta, const LatticeModel& model, const SingleQubitControl& control,
                      const SynthesisOptions& options = {});

/// V_0 of the chain, one segment of length pi / g. The control's angle must be
/// vartheta; varphi is the phase offset of the second target's modulation.
GateRecipe make_two_qubit(double vartheta, double varphi, const LatticeModel& model, const TwoQubitControl& control);

/// Printed closed forms: e^{-i theta sigma_y}, e^{-i gamma sigma_z}, and V_0.
ComplexMatrix rot_y_matrix(double theta);
ComplexMatrix rot_z_matrix(double gamma);
ComplexMatrix two_qubit_matrix(double vartheta, double varphi);

/// Gate on the targets conditioned on the auxiliary state (0 or 1), built from
/// the factorisations: -W2 G R2^† R1 G W1^† / -R2 G W2^† W1 G R1^† or
/// X J X^† / Z J Z^†.
ComplexMatrix ideal_conditional_decomposition(const GateRecipe& recipe, int auxiliary_state);

/// Gate subspace of `recipe` inside `model`: targets in {0,1}, every other
/// transmon in |0>. Columns ordered like `ideal_unitary`.
std::vector<StateVector> gate_basis(const LatticeModel& model, const GateRecipe& recipe);

/// Sum of |b><b| over `basis`.
ComplexMatrix projector(std::span<const StateVector> basis);

/// <b_i| U |b_j>.
ComplexMatrix restrict_to(const ComplexMatrix& u, std::span<const StateVector> basis);

/// Product of exp(-i H_eff t) over the recipe segments.
ComplexMatrix effective_propagator(const LatticeModel& model, const GateRecipe& recipe);

/// Effective Hamiltonian of one segment (constant in time).
ComplexMatrix effective_segment_hamiltonian(const LatticeModel& model, const SegmentSchedule& segment);

// ---------------------------------------------------------------------------
// Holonomy conditions
// ---------------------------------------------------------------------------

struct PropagatorSample {
  double t = 0.0;
  ComplexMatrix u;
};

/// max_t ||P U(t)^† H(t) U(t) P||_F. With no samples, ||P H(0) P||_F.
double check_parallel_transport(const std::function<ComplexMatrix(double)>& hamiltonian, const ComplexMatrix& p,
                                std::span<const PropagatorSample> samples);

/// min_b ||P U b||^2, P the projector onto span(basis).
double check_cyclic(const ComplexMatrix& u, std::span<const StateVector> basis);

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

/// `[gate]` section with angles, timings (ns) and per-segment settings (MHz).
std::string serialize(const GateRecipe& recipe);

/// Replays a serialized recipe (segment_count present) or synthesizes one from
/// kind/angle/label fields. Errors carry the line and field.
GateRecipe recipe_from_section(const LatticeModel& model, const config::Section& section,
                               const SynthesisOptions& options = {});

std::vector<GateRecipe> load_recipes(const LatticeModel& model, std::string_view config_text,
                                     const SynthesisOptions& options = {});

}  // namespace nhqc
