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

#include <span>
#include <string>
#include <vector>

#include "nhqc/device_model.hpp"
#include "nhqc/frame_builder.hpp"
#include "nhqc/operator_core.hpp"

namespace nhqc {

inline constexpr double kTraceTol = 1e-8;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPositivityTol = 1e-7;

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix rho, double time = 0.0);

  static DensityMatrix pure(const StateVector& psi, double time = 0.0);

  const ComplexMatrix& matrix() const { return rho_; }
  double time() const { return time_; }
  Eigen::Index dim() const { return rho_.rows(); }

  double trace_drift() const;
  double hermiticity() const;
  double min_eigenvalue() const;

  /// Throws InvariantBreach naming the first violated bound.
  void validate(const std::string& context = "density matrix") const;

 private:
  ComplexMatrix rho_;
  double time_ = 0.0;
};

struct TransmonNoise {
  double relaxation = 0.0;  // kappa_-, rad/s
  double dephasing = 0.0;   // kappa_z, rad/s
};

struct NoiseSpec {
  std::vector<TransmonNoise> per_qubit;  // model order
  // Weight sqrt(j+1) instead of j+1 on |j><j+1| of the relaxation operator.
  bool sqrt2_relaxation = false;

  static NoiseSpec uniform(std::size_t qubits, double kappa, bool sqrt2_relaxation = false);
};

struct Collapse {
  double rate = 0.0;  // multiplies L(A) = 2 A rho A^† - A^†A rho - rho A^†A
  ComplexMatrix op;
  std::string label;
};

/// Relaxation sum_j w_j |j><j+1| and dephasing n on every transmon, each with
/// rate kappa / 2.
std::vector<Collapse> collapse_operators(const LatticeModel& model, const NoiseSpec& noise);

struct StepControl {
  double max_step = 20e-12;         // s
  double points_per_period = 200.0;
  int subdivide = 1;                // step-doubling probes use 2
};

/// Number of fixed RK4 steps used for `duration` under `h`.
long steps_for(const TimeDependentHamiltonian& h, double duration, const StepControl& step);

/// Hamiltonian active for `duration`, evaluated at clock_offset + local time.
struct PulseWindow {
  TimeDependentHamiltonian h;
  double duration = 0.0;
  double clock_offset = 0.0;
};

using PulseSequence = std::vector<PulseWindow>;

/// Largest observed violations of the density-matrix bounds.
struct HygieneReport {
  double trace_drift = 0.0;
  double hermiticity = 0.0;
  double min_eigenvalue = 1.0;

  void merge(const HygieneReport& other);
  void observe(const DensityMatrix& rho);
};

/// Master equation over [t0, t1] with H evaluated at the absolute clock.
/// Throws InvariantBreach when the state leaves its admissible set.
DensityMatrix propagate(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses,
                        const DensityMatrix& rho0, double t0, double t1, const StepControl& step = {},
                        HygieneReport* report = nullptr);

DensityMatrix propagate(const PulseSequence& sequence, std::span<const Collapse> collapses,
                        const DensityMatrix& rho0, const StepControl& step = {}, HygieneReport* report = nullptr);

StateVector propagate_unitary(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0, double t1,
                              const StepControl& step = {});

StateVector propagate_unitary(const PulseSequence& sequence, const StateVector& psi0, const StepControl& step = {});

/// Channel restricted to inputs supported on span(basis).
class ProcessMap {
 public:
  ProcessMap(std::vector<StateVector> basis, std::vector<ComplexMatrix> images);

  /// Image of rho_in = sum c_ij |b_i><b_j| with c = <b_i|rho|b_j>.
  ComplexMatrix apply(const ComplexMatrix& rho_in) const;
  /// Image of |psi><psi|, psi given in the full space.
  ComplexMatrix apply_state(const StateVector& psi) const;
  /// Image of |b_i><b_j|.
  const ComplexMatrix& image(std::size_t i, std::size_t j) const { return images_[i * basis_.size() + j]; }

  const std::vector<StateVector>& basis() const { return basis_; }

 private:
  std::vector<StateVector> basis_;
  std::vector<ComplexMatrix> images_;  // row-major over (i, j)
};

/// Propagates |b_i><b_j| for i <= j and fills the rest by adjoint symmetry.
/// Without dissipation the basis vectors are propagated as pure states.
ProcessMap process_matrix(const PulseSequence& sequence, std::span<const Collapse> collapses,
                          std::span<const StateVector> basis, const StepControl& step = {},
                          HygieneReport* report = nullptr);

ProcessMap process_matrix(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses,
                          std::span<const StateVector> basis, double t0, double t1, const StepControl& step = {},
                          HygieneReport* report = nullptr);

/// Full propagator on span(basis): columns U b_j (pure-state propagation).
ComplexMatrix propagate_columns(const PulseSequence& sequence, std::span<const StateVector> basis,
                                const StepControl& step = {});

}  // namespace nhqc
