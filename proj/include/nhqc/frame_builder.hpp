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
#include <utility>
#include <vector>

#include "nhqc/device_model.hpp"
#include "nhqc/operator_core.hpp"

namespace nhqc {

/// Bessel function of the first kind J_m(beta) for |beta| <= 20.
/// Throws std::domain_error outside that range.
double bessel_j(int m, double beta);

/// Smallest beta >= 0 with J_1(beta) = ratio, for 0 <= ratio <= max J_1 (≈0.5819).
/// Throws std::domain_error when the ratio is out of reach.
double bessel_j1_inverse(double ratio);

/// Sinusoidal flux modulation of a target's transition frequency:
///   omega(t) = omega + amplitude * sin(frequency * t + phase_offset + pi/2).
struct ModulationSpec {
  std::string target;
  double amplitude = 0.0;  // rad/s
  double frequency = 0.0;  // rad/s
  double phase_offset = 0.0;

  double index() const { return frequency > 0.0 ? amplitude / frequency : 0.0; }

  friend bool operator==(const ModulationSpec&, const ModulationSpec&) = default;
};

/// Microwave drive on an auxiliary: amplitude * cos(omega_d t - phase), detuning
/// = omega_aux - omega_d.
struct DriveSpec {
  std::string qubit;
  double amplitude = 0.0;  // rad/s
  double detuning = 0.0;   // rad/s
  double phase = 0.0;

  friend bool operator==(const DriveSpec&, const DriveSpec&) = default;
};

/// Resonant exchange rate J_1(beta) g e^{i phase_offset} produced by `mod` on an
/// edge of bare strength `g`.
Complex effective_coupling(double g, const ModulationSpec& mod);

// ---------------------------------------------------------------------------
// Time-dependent Hamiltonian as a sum of coefficient functions times fixed
// sparse patterns. Entries keep a fixed order so evaluation only refreshes
// values.
// ---------------------------------------------------------------------------

struct SparseEntry {
  int row = 0;
  int col = 0;
  double weight = 0.0;
};

/// Phase factor exp(-i index cos(frequency t + phase + pi/2)).
struct ModulationTrack {
  double index = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  Complex at(double t) const;
};

/// amplitude * exp(-i frequency t) * track(t)^power on `entries`, plus H.c.
struct ExchangeTerm {
  Complex amplitude;
  double frequency = 0.0;
  int track = -1;
  int power = 0;
  std::vector<SparseEntry> entries;
};

/// amplitude * sin(frequency t + phase) on diagonal `entries`.
struct DiagonalTerm {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  std::vector<SparseEntry> entries;
};

class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(int dim);

  int dim() const { return dim_; }

  int add_track(ModulationTrack track);
  void add_exchange(ExchangeTerm term);
  void add_diagonal(DiagonalTerm term);

  ComplexMatrix at(double t) const;

  // Sparse view: slot k holds H(t)(rows()[k], cols()[k]); slots may repeat a
  // position and must be summed.
  const std::vector<int>& rows() const { return rows_; }
  const std::vector<int>& cols() const { return cols_; }
  void values(double t, std::span<Complex> out) const;
  std::size_t nnz() const { return rows_.size(); }

  /// Largest angular frequency present in the coefficients, counting
  /// modulation sidebands up to |m| <= index + 3.
  double max_frequency() const;
  /// Largest absolute matrix element bound.
  double max_amplitude() const;

  const std::vector<ExchangeTerm>& exchange_terms() const { return exchange_; }
  const std::vector<DiagonalTerm>& diagonal_terms() const { return diagonal_; }
  const std::vector<ModulationTrack>& tracks() const { return tracks_; }

 private:
  int dim_;
  std::vector<ModulationTrack> tracks_;
  std::vector<ExchangeTerm> exchange_;
  std::vector<DiagonalTerm> diagonal_;
  std::vector<int> rows_;
  std::vector<int> cols_;
};

enum class ModulationFrame {
  // Modulation folded into exp(-i beta cos(nu t + pi/2)) on every exchange term.
  phase_factor,
  // Modulation kept as an explicit epsilon sin(nu t + pi/2) n term.
  explicit_diagonal,
};

struct FrameOptions {
  ModulationFrame frame = ModulationFrame::phase_factor;
  // Exchange terms in which both partners leave an excited level (the
  // |21><12| family for three levels).
  bool include_higher_exchange = true;
};

/// Interaction-picture Hamiltonian of an arbitrary sub-lattice: every coupling
/// edge contributes all single-excitation exchange terms with their detuning
/// phases, modulated targets carry their phase factors, drives act on every
/// rung of the driven transmon.
TimeDependentHamiltonian build_h_interaction(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                             std::span<const DriveSpec> drives, const FrameOptions& options = {});

/// Target + auxiliary pair with one modulation and one drive.
TimeDependentHamiltonian build_h_interaction_2t(const LatticeModel& model, const ModulationSpec& modulation,
                                                const DriveSpec& drive, const FrameOptions& options = {});

/// Target-auxiliary-target chain with one modulation per target.
TimeDependentHamiltonian build_h_interaction_3t(const LatticeModel& model,
                                                const std::pair<ModulationSpec, ModulationSpec>& modulations,
                                                const FrameOptions& options = {});

/// diag(exp(i n_chi theta_chi(t))) mapping explicit-frame states into the
/// phase-factor frame, theta_chi(t) = -beta cos(nu t + phase + pi/2).
ComplexMatrix modulation_frame_transform(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                         double t);

/// Resonant (rotating-wave) Hamiltonian of a sub-lattice: only modulated edges
/// and the lowest drive rung survive, all constant in time.
TimeDependentHamiltonian build_h_effective(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                           std::span<const DriveSpec> drives);

/// g' |10><01| + (eps/2) e^{i phi} |1><0|_B + H.c. on two qutrits (9x9).
ComplexMatrix build_h_effective_1q(double gp_ab, double eps, double phi);

/// g'_AB |01><10|_AB + g'_BC e^{i varphi} |01><10|_BC + H.c. on three qutrits (27x27).
ComplexMatrix build_h_effective_2q(double gp_ab, double gp_bc, double varphi);

}  // namespace nhqc
