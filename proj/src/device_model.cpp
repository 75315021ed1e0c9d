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

#include "nhqc/device_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nhqc/config_text.hpp"
#include "nhqc/errors.hpp"

namespace nhqc {

std::string_view to_string(Role role) {
  return role == Role::target ? "target" : "auxiliary";
}

LatticeModel::LatticeModel(std::vector<TransmonSpec> qubits, std::vector<Coupling> couplings)
    : qubits_(std::move(qubits)), couplings_(std::move(couplings)) {
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const auto& q = qubits_[i];
    if (q.label.empty()) throw ValidationError("qubit with empty label");
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits_[j].label == q.label) throw ValidationError("duplicate qubit label '" + q.label + "'");
    }
    if (q.levels < 2) throw ValidationError("qubit '" + q.label + "': levels must be >= 2");
    if (!(q.anharmonicity.mhz_value() > 0.0)) {
      throw ValidationError("qubit '" + q.label + "': anharmonicity must be positive");
    }
    if (q.role == Role::auxiliary && q.detuning.mhz_value() != 0.0) {
      throw ValidationError("qubit '" + q.label + "': auxiliary qubits define the reference, detuning must be 0");
    }
  }

  for (std::size_t i = 0; i < couplings_.size(); ++i) {
    const auto& c = couplings_[i];
    const std::string edge = c.a + "-" + c.b;
    const auto ia = find(c.a);
    const auto ib = find(c.b);
    if (!ia || !ib) throw ValidationError("coupling " + edge + ": unknown qubit label");
    if (*ia == *ib) throw ValidationError("coupling " + edge + ": self-coupling");
    if (!(c.g.mhz_value() > 0.0)) throw ValidationError("coupling " + edge + ": g must be positive");
    if (qubits_[*ia].role == qubits_[*ib].role) {
      throw ValidationError("coupling " + edge + ": edges must join a target and an auxiliary (both are " +
                            std::string(to_string(qubits_[*ia].role)) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = couplings_[j];
      if ((o.a == c.a && o.b == c.b) || (o.a == c.b && o.b == c.a)) {
        throw ValidationError("coupling " + edge + ": duplicate edge");
      }
    }
    const auto& target = qubits_[*ia].role == Role::target ? qubits_[*ia] : qubits_[*ib];
    if (!(target.detuning.mhz_value() > 0.0)) {
      throw ValidationError("qubit '" + target.label + "': target coupled to an auxiliary needs detuning > 0");
    }
  }
}

std::optional<std::size_t> LatticeModel::find(std::string_view label) const {
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    if (qubits_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t LatticeModel::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw ValidationError("unknown qubit label '" + std::string(label) + "'");
}

std::optional<Frequency> LatticeModel::coupling(std::string_view a, std::string_view b) const {
  for (const auto& c : couplings_) {
    if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return c.g;
  }
  return std::nullopt;
}

std::vector<int> LatticeModel::dims() const {
  std::vector<int> out;
  out.reserve(qubits_.size());
  for (const auto& q : qubits_) out.push_back(q.levels);
  return out;
}

LatticeModel load_lattice(std::string_view config_text) {
  std::vector<TransmonSpec> qubits;
  std::vector<Coupling> couplings;

  for (const auto& section : config::parse(config_text)) {
    if (section.name.rfind("qubit.", 0) == 0) {
      TransmonSpec q;
      q.label = section.name.substr(6);
      if (q.label.empty()) throw ConfigError(section.line, "", "qubit section without label");
      const auto& role = section.require("role");
      if (role.value == "target") {
        q.role = Role::target;
      } else if (role.value == "auxiliary") {
        q.role = Role::auxiliary;
      } else {
        throw ConfigError(role.line, role.key, "expected 'target' or 'auxiliary', got '" + role.value + "'");
      }
      q.anharmonicity = Frequency::from_mhz(section.get_double("anharmonicity_MHz"));
      q.detuning = Frequency::from_mhz(section.get_optional_double("detuning_MHz").value_or(0.0));
      if (section.find("levels") != nullptr) q.levels = section.get_int("levels");
      for (const auto& e : section.entries) {
        if (e.key != "role" && e.key != "anharmonicity_MHz" && e.key != "detuning_MHz" && e.key != "levels") {
          throw ConfigError(e.line, e.key, "unknown field in [" + section.name + "]");
        }
      }
      qubits.push_back(std::move(q));
    } else if (section.name == "coupling") {
      Coupling c;
      c.a = section.get_string("a");
      c.b = section.get_string("b");
      c.g = Frequency::from_mhz(section.get_double("g_MHz"));
      for (const auto& e : section.entries) {
        if (e.key != "a" && e.key != "b" && e.key != "g_MHz") {
          throw ConfigError(e.line, e.key, "unknown field in [coupling]");
        }
      }
      couplings.push_back(std::move(c));
    }
    // Other sections ([gate], ...) belong to other readers.
  }
  return LatticeModel(std::move(qubits), std::move(couplings));
}

std::string serialize(const LatticeModel& model) {
  std::ostringstream out;
  for (const auto& q : model.qubits()) {
    out << "[qubit." << q.label << "]\n"
        << "role = " << to_string(q.role) << "\n"
        << "anharmonicity_MHz = " << config::format_double(q.anharmonicity.mhz_value()) << "\n"
        << "detuning_MHz = " << config::format_double(q.detuning.mhz_value()) << "\n"
        << "levels = " << q.levels << "\n\n";
  }
  for (const auto& c : model.couplings()) {
    out << "[coupling]\n"
        << "a = " << c.a << "\n"
        << "b = " << c.b << "\n"
        << "g_MHz = " << config::format_double(c.g.mhz_value()) << "\n\n";
  }
  return out.str();
}

LatticeModel subsystem(const LatticeModel& model, const std::vector<std::string>& labels) {
  if (labels.empty()) throw ValidationError("subsystem: empty selection");
  std::vector<TransmonSpec> qubits;
  for (const auto& l : labels) {
    if (std::count(labels.begin(), labels.end(), l) > 1) {
      throw ValidationError("subsystem: label '" + l + "' selected twice");
    }
    qubits.push_back(model.qubit(l));
  }
  std::vector<Coupling> couplings;
  auto selected = [&](const std::string& l) { return std::find(labels.begin(), labels.end(), l) != labels.end(); };
  for (const auto& c : model.couplings()) {
    if (selected(c.a) && selected(c.b)) couplings.push_back(c);
  }

  // Union-find over the induced edges.
  std::vector<std::size_t> parent(labels.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto pos = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
  };
  for (const auto& c : couplings) parent[root(pos(c.a))] = root(pos(c.b));
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (root(i) != root(0)) {
      throw ValidationError("subsystem: selection is disconnected ('" + labels[i] + "' not reachable from '" +
                            labels[0] + "')");
    }
  }
  return LatticeModel(std::move(qubits), std::move(couplings));
}

std::size_t hilbert_dim(const LatticeModel& model) {
  std::size_t d = 1;
  for (const auto& q : model.qubits()) d *= static_cast<std::size_t>(q.levels);
  return d;
}

LatticeModel reference_lattice() {
  auto f = Frequency::from_mhz;
  std::vector<TransmonSpec> qubits = {
      {"A", Role::target, f(375.0), f(245.0), 3},
      {"B", Role::auxiliary, f(350.0), f(0.0), 3},
      {"C", Role::target, f(310.0), f(230.0), 3},
      // D completes the plaquette; no scenario drives it.
      {"D", Role::target, f(340.0), f(260.0), 3},
      {"E", Role::target, f(325.0), f(235.0), 3},
  };
  std::vector<Coupling> couplings = {
      {"A", "B", f(11.41)},
      {"B", "C", f(11.41)},
      {"B", "D", f(11.41)},
      {"B", "E", f(11.41)},
  };
  return LatticeModel(std::move(qubits), std::move(couplings));
}

}  // namespace nhqc
