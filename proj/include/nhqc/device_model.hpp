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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/units.hpp"

namespace nhqc {

/// A frequency entered in MHz. Stored as entered so that text round-trips are
/// exact; `rad_per_s()` gives the angular value used by the simulators.
class Frequency {
 public:
  constexpr Frequency() = default;
  static constexpr Frequency from_mhz(double f) { return Frequency(f); }

  constexpr double mhz_value() const { return mhz_; }
  constexpr double rad_per_s() const { return mhz(mhz_); }

  friend constexpr bool operator==(Frequency, Frequency) = default;

 private:
  constexpr explicit Frequency(double f) : mhz_(f) {}
  double mhz_ = 0.0;
};

enum class Role { target, auxiliary };

std::string_view to_string(Role role);

struct TransmonSpec {
  std::string label;
  Role role = Role::target;
  Frequency anharmonicity;
  // omega_aux_reference - omega_self; auxiliaries sit at the reference (0).
  Frequency detuning;
  int levels = 3;

  friend bool operator==(const TransmonSpec&, const TransmonSpec&) = default;
};

struct Coupling {
  std::string a;
  std::string b;
  Frequency g;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Validated target/auxiliary lattice. Immutable once constructed.
class LatticeModel {
 public:
  /// Throws ValidationError naming the offending qubit or edge.
  LatticeModel(std::vector<TransmonSpec> qubits, std::vector<Coupling> couplings);

  const std::vector<TransmonSpec>& qubits() const { return qubits_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws ValidationError for unknown labels.
  std::size_t index_of(std::string_view label) const;
  const TransmonSpec& qubit(std::string_view label) const { return qubits_[index_of(label)]; }

  /// Coupling strength between two labels, if an edge exists.
  std::optional<Frequency> coupling(std::string_view a, std::string_view b) const;

  /// Local Hilbert dimensions in qubit order.
  std::vector<int> dims() const;

  friend bool operator==(const LatticeModel&, const LatticeModel&) = default;

 private:
  std::vector<TransmonSpec> qubits_;
  std::vector<Coupling> couplings_;
};

/// Parses `[qubit.<label>]` and `[coupling]` sections. Frequencies are in MHz
/// and are multiplied by 2π internally.
LatticeModel load_lattice(std::string_view config_text);

std::string serialize(const LatticeModel& model);

/// Induced sub-lattice on `labels` (in the given order). The induced coupling
/// graph must be connected.
LatticeModel subsystem(const LatticeModel& model, const std::vector<std::string>& labels);

std::size_t hilbert_dim(const LatticeModel& model);

/// The five-transmon plaquette used by the reference scenarios: targets A, C,
/// D, E around auxiliary B.
LatticeModel reference_lattice();

}  // namespace nhqc
