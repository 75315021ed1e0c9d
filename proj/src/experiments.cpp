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

#include "nhqc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "nhqc/config_text.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

constexpr double kPinnedIndex = 1.6;
constexpr double kPinnedDriveMHz = 11.26;
constexpr double kUpPhase = kPi / 8;
constexpr std::size_t kMaxDim = 729;

std::string fmt(double v) { return config::format_double(v); }

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

LatticeModel device_lattice(const ScenarioSpec& spec) {
  return spec.config_text.empty() ? reference_lattice() : load_lattice(spec.config_text);
}

// A named scenario fixes the physical parameters of the transmons it touches.
void check_pinned(const LatticeModel& lattice, const std::vector<std::string>& labels, ScenarioName name) {
  const auto ref = reference_lattice();
  const std::string where = "config mismatch with pinned " + std::string(to_string(name)) + " scenario";
  for (const auto& l : labels) {
    if (!lattice.find(l)) throw ConfigError(0, "qubit." + l, where + ": qubit missing");
    if (!(lattice.qubit(l) == ref.qubit(l))) throw ConfigError(0, "qubit." + l, where + ": parameters differ");
  }
  for (const auto& a : labels) {
    for (const auto& b : labels) {
      if (a < b && ref.coupling(a, b) != lattice.coupling(a, b)) {
        throw ConfigError(0, "coupling", where + ": coupling " + a + "-" + b + " differs");
      }
    }
  }
}

// Register: the ordered targets whose {0,1} states carry the logical data.
StateVector register_state(const LatticeModel& model, const std::vector<std::string>& reg, unsigned bits) {
  const auto dims = model.dims();
  std::vector<int> levels(dims.size(), 0);
  const int n = static_cast<int>(reg.size());
  for (int b = 0; b < n; ++b) levels[model.index_of(reg[b])] = (bits >> (n - 1 - b)) & 1;
  return basis_state(dims, levels);
}

// Embeds a gate on `targets` into the register.
ComplexMatrix lift_to_register(const ComplexMatrix& gate, const std::vector<std::string>& targets,
                               const std::vector<std::string>& reg) {
  const int n = static_cast<int>(reg.size());
  std::vector<int> pos;
  for (const auto& t : targets) pos.push_back(static_cast<int>(std::find(reg.begin(), reg.end(), t) - reg.begin()));
  const int k = static_cast<int>(targets.size());
  const int size = 1 << n;
  ComplexMatrix out = ComplexMatrix::Zero(size, size);
  for (int col = 0; col < size; ++col) {
    int sub_col = 0;
    for (int j = 0; j < k; ++j) sub_col = (sub_col << 1) | ((col >> (n - 1 - pos[j])) & 1);
    for (int sub_row = 0; sub_row < (1 << k); ++sub_row) {
      int row = col;
      for (int j = 0; j < k; ++j) {
        const int bit = (sub_row >> (k - 1 - j)) & 1;
        const int mask = 1 << (n - 1 - pos[j]);
        row = bit ? (row | mask) : (row & ~mask);
      }
      out(row, col) += gate(sub_row, sub_col);
    }
  }
  return out;
}

ComplexMatrix composite_ideal(const std::vector<GateRecipe>& recipes, const std::vector<std::string>& reg) {
  const int size = 1 << reg.size();
  ComplexMatrix u = ComplexMatrix::Identity(size, size);
  for (const auto& r : recipes) u = lift_to_register(r.ideal_unitary, r.targets, reg) * u;
  return u;
}

void add_recipe_params(Params& p, const GateRecipe& r, std::size_t index) {
  const std::string key = "gate" + std::to_string(index + 1);
  std::ostringstream v;
  v << to_string(r.kind) << "(";
  if (r.kind == GateKind::two_qubit) {
    v << "vartheta=" << fmt(r.vartheta) << " varphi=" << fmt(r.varphi);
  } else {
    v << (r.kind == GateKind::rot_z ? "gamma=" + fmt(r.gamma) : "theta=" + fmt(r.theta));
  }
  v << ") targets=" << join(r.targets, "+") << " aux=" << r.auxiliary;
  for (const auto& m : r.segments.front().modulations) {
    v << " beta_" << m.target << "=" << fmt(m.index()) << " nu_" << m.target << "_MHz=" << fmt(to_mhz(m.frequency))
      << " mod_phase_" << m.target << "=" << fmt(m.phase_offset);
  }
  if (r.segments.front().drive) v << " eps_MHz=" << fmt(to_mhz(r.segments.front().drive->amplitude));
  if (r.kind != GateKind::two_qubit) {
    v << " theta=" << fmt(r.theta) << " Omega_MHz=" << fmt(to_mhz(r.rate)) << " a=" << fmt(r.a)
      << " branch=" << to_string(r.branch) << " sign_flipped=" << (r.sign_flipped ? "true" : "false");
  } else {
    v << " g_MHz=" << fmt(to_mhz(r.rate));
  }
  v << " segment_ns=" << fmt(to_ns(r.segments.front().duration)) << " total_ns=" << fmt(to_ns(r.total_duration()));
  p.emplace_back(key, v.str());
}

// U_P on a target through an auxiliary with the pinned modulation index and
// drive; the drive is retuned onto the nearest solvable mixing angle.
GateRecipe pinned_phase_gate(const LatticeModel& model, const std::string& target, const std::string& aux,
                             const SynthesisOptions& options, Params& notes) {
  SingleQubitControl control{target, aux, kPinnedIndex, 0.0, mhz(kPinnedDriveMHz)};
  try {
    return make_rot_z(kUpPhase, model, control, options);
  } catch (const UnsolvableDuration& e) {
    const double before = mixing_angle(model, control);
    control = retune_drive(model, control, e.nearest_theta());
    notes.emplace_back("retune_" + target + aux, "theta " + fmt(before) + " -> " + fmt(e.nearest_theta()) +
                                                     " (eps " + fmt(kPinnedDriveMHz) + " -> " +
                                                     fmt(to_mhz(control.drive_amplitude)) + " MHz)");
    return make_rot_z(kUpPhase, model, control, options);
  }
}

GateRecipe pinned_swaplike(const LatticeModel& model, const std::string& a, const std::string& aux,
                           const std::string& c) {
  const TwoQubitControl control{a, aux, c, kPinnedIndex, kPinnedIndex, 0.0};
  return make_two_qubit(two_qubit_angle(model, control), kPi, model, control);
}

void finish_plan(ScenarioPlan& plan, const ScenarioSpec& spec, const std::vector<std::string>& reg,
                 const std::vector<unsigned>& in_bits, const std::vector<unsigned>& out_bits) {
  if (hilbert_dim(plan.model) > kMaxDim) throw ValidationError("scenario Hilbert space too large");
  plan.sequence = build_sequence(plan.model, plan.recipes, spec.mode,
                                 FrameOptions{ModulationFrame::phase_factor, spec.include_higher_exchange},
                                 spec.spectator_couplings);
  for (unsigned b : in_bits) plan.inputs.push_back(register_state(plan.model, reg, b));
  for (unsigned b : out_bits) plan.outputs.push_back(register_state(plan.model, reg, b));
  const ComplexMatrix u = composite_ideal(plan.recipes, reg);
  plan.ideal.resize(static_cast<Eigen::Index>(out_bits.size()), static_cast<Eigen::Index>(in_bits.size()));
  for (std::size_t i = 0; i < out_bits.size(); ++i) {
    for (std::size_t j = 0; j < in_bits.size(); ++j) plan.ideal(i, j) = u(out_bits[i], in_bits[j]);
  }
  const ComplexMatrix gram = plan.ideal.adjoint() * plan.ideal;
  if (max_abs(gram - ComplexMatrix::Identity(gram.rows(), gram.cols())) > 1e-9) {
    throw ValidationError("scenario ideal does not map the input subspace onto the output subspace");
  }

  auto& p = plan.params;
  p.insert(p.begin(), {{"scenario", std::string(to_string(plan.name))},
                       {"mode", std::string(to_string(spec.mode))},
                       {"qubits", [&] {
                          std::vector<std::string> q;
                          for (const auto& t : plan.model.qubits()) q.push_back(t.label);
                          return join(q);
                        }()}});
  for (const auto& q : plan.model.qubits()) {
    p.emplace_back("qubit_" + q.label, std::string(to_string(q.role)) + " alpha_MHz=" + fmt(q.anharmonicity.mhz_value()) +
                                           " detuning_MHz=" + fmt(q.detuning.mhz_value()) +
                                           " levels=" + std::to_string(q.levels));
  }
  for (const auto& c : plan.model.couplings()) p.emplace_back("g_" + c.a + c.b + "_MHz", fmt(c.g.mhz_value()));
  for (std::size_t i = 0; i < plan.recipes.size(); ++i) add_recipe_params(p, plan.recipes[i], i);
  std::vector<std::string> k;
  for (double kappa : spec.kappas) k.push_back(fmt(to_khz(kappa)));
  p.emplace_back("kappa_kHz", join(k));
  p.emplace_back("dissipator", "rate kappa/2 on L(A)=2ArA^dag-A^dagAr-rA^dagA");
  p.emplace_back("relaxation_operator", spec.sqrt2_relaxation ? "|0><1|+sqrt2|1><2|" : "|0><1|+2|1><2|");
  p.emplace_back("spectator_couplings", spec.spectator_couplings ? "on" : "off");
  p.emplace_back("higher_exchange", spec.include_higher_exchange ? "true" : "false");
  p.emplace_back("grid", plan.grid_inputs == 1 ? "1q n=" + std::to_string(spec.grid_1q)
                                               : "2q n=" + std::to_string(spec.grid_2q) + "x" +
                                                     std::to_string(spec.grid_2q));
  p.emplace_back("max_windings", std::to_string(spec.synthesis.max_windings));
  p.emplace_back("sign_flip_branch", spec.synthesis.allow_sign_flip ? "allowed" : "off");
  p.emplace_back("step", "max_ps=" + fmt(spec.step.max_step * 1e12) +
                             " points_per_period=" + fmt(spec.step.points_per_period) +
                             " subdivide=" + std::to_string(spec.step.subdivide));
}

ScenarioPlan plan_fig2(const ScenarioSpec& spec) {
  const auto lattice = device_lattice(spec);
  check_pinned(lattice, {"A", "B"}, spec.name);
  ScenarioPlan plan{spec.name, subsystem(lattice, {"A", "B"}), {}, {}, {}, {}, {}, {}, 1, {}};
  plan.recipes = {pinned_phase_gate(plan.model, "A", "B", spec.synthesis, plan.params)};
  plan.initial = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  finish_plan(plan, spec, {"A"}, {0, 1}, {0, 1});
  return plan;
}

ScenarioPlan plan_fig3(const ScenarioSpec& spec) {
  const auto lattice = device_lattice(spec);
  check_pinned(lattice, {"A", "B", "C"}, spec.name);
  ScenarioPlan plan{spec.name, subsystem(lattice, {"A", "B", "C"}), {}, {}, {}, {}, {}, {}, 2, {}};
  plan.recipes = {pinned_swaplike(plan.model, "A", "B", "C")};
  // (|000> + |001>)/sqrt2 in the (A, C) register.
  plan.initial = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0};
  finish_plan(plan, spec, {"A", "C"}, {0, 1, 2, 3}, {0, 1, 2, 3});
  return plan;
}

ScenarioPlan plan_fig4(const ScenarioSpec& spec) {
  const auto lattice = device_lattice(spec);
  check_pinned(lattice, {"A", "B", "E"}, spec.name);
  ScenarioPlan plan{spec.name, subsystem(lattice, {"A", "B", "E"}), {}, {}, {}, {}, {}, {}, 1, {}};
  plan.recipes = {pinned_phase_gate(plan.model, "A", "B", spec.synthesis, plan.params),
                  pinned_swaplike(plan.model, "A", "B", "E"),
                  pinned_phase_gate(plan.model, "E", "B", spec.synthesis, plan.params)};
  plan.initial = {std::cos(spec.fig4_angle), std::sin(spec.fig4_angle)};
  plan.params.emplace_back("initial", "cos(t)|0>_A+sin(t)|1>_A, t=" + fmt(spec.fig4_angle));
  // Register (A, E): inputs |t>_A|0>_E, outputs |0>_A|t>_E.
  finish_plan(plan, spec, {"A", "E"}, {0, 2}, {0, 1});
  return plan;
}

ScenarioPlan plan_custom(const ScenarioSpec& spec) {
  const auto lattice = device_lattice(spec);
  const auto sections = config::parse(spec.config_text);
  std::vector<GateRecipe> recipes;
  std::optional<std::vector<std::string>> labels;
  for (const auto& s : sections) {
    if (s.name == "gate") recipes.push_back(recipe_from_section(lattice, s, spec.synthesis));
    if (s.name == "scenario") {
      for (const auto& e : s.entries) {
        if (e.key != "subsystem") throw ConfigError(e.line, e.key, "unknown field in [scenario]");
      }
      if (s.find("subsystem")) labels = config::split_list(s.get_string("subsystem"), ',');
    }
  }
  if (!labels) {
    std::vector<std::string> used;
    for (const auto& q : lattice.qubits()) {
      bool in = false;
      for (const auto& r : recipes) {
        in = in || q.label == r.auxiliary || std::find(r.targets.begin(), r.targets.end(), q.label) != r.targets.end();
      }
      if (in) used.push_back(q.label);
    }
    if (used.empty()) {
      for (const auto& q : lattice.qubits()) used.push_back(q.label);
    }
    labels = used;
  }
  ScenarioPlan plan{ScenarioName::custom, subsystem(lattice, *labels), std::move(recipes), {}, {}, {}, {}, {}, 1, {}};
  std::vector<std::string> reg;
  for (const auto& q : plan.model.qubits()) {
    bool in = false;
    for (const auto& r : plan.recipes) {
      for (const auto& t : r.targets) {
        plan.model.index_of(t);
        in = in || t == q.label;
      }
      plan.model.index_of(r.auxiliary);
    }
    if (in) reg.push_back(q.label);
  }
  if (reg.empty()) {
    for (const auto& q : plan.model.qubits()) {
      if (q.role == Role::target) {
        reg.push_back(q.label);
        break;
      }
    }
  }
  if (reg.empty()) throw ValidationError("custom scenario needs at least one target qubit");
  if (reg.size() > 2) throw ValidationError("custom scenario supports at most two logical targets");
  plan.grid_inputs = static_cast<int>(reg.size());
  std::vector<unsigned> bits;
  for (unsigned b = 0; b < (1u << reg.size()); ++b) bits.push_back(b);
  // First target in (|0> + |1>)/sqrt2, the other in |0>.
  plan.initial.assign(bits.size(), 0.0);
  plan.initial[0] = 1.0 / std::sqrt(2.0);
  plan.initial[reg.size() == 1 ? 1 : 2] = 1.0 / std::sqrt(2.0);
  finish_plan(plan, spec, reg, bits, bits);
  return plan;
}

}  // namespace

std::string_view to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::fig2_up: return "fig2_up";
    case ScenarioName::fig3_swaplike: return "fig3_swaplike";
    case ScenarioName::fig4_sequence: return "fig4_sequence";
    case ScenarioName::custom: return "custom";
  }
  return "";
}

std::string_view to_string(SimulationMode mode) { return mode == SimulationMode::full ? "full" : "effective"; }

std::vector<double> default_kappa_grid() {
  std::vector<double> out;
  for (int k = 0; k <= 10; ++k) out.push_back(khz(k));
  return out;
}

PulseSequence build_sequence(const LatticeModel& model, const std::vector<GateRecipe>& recipes, SimulationMode mode,
                             const FrameOptions& frame, bool spectator_couplings) {
  PulseSequence seq;
  for (const auto& r : recipes) {
    std::vector<Coupling> edges;
    for (const auto& c : model.couplings()) {
      auto involved = [&](const std::string& l) {
        return l == r.auxiliary || std::find(r.targets.begin(), r.targets.end(), l) != r.targets.end();
      };
      if (spectator_couplings || (involved(c.a) && involved(c.b))) edges.push_back(c);
    }
    const LatticeModel active(model.qubits(), edges);
    for (const auto& s : r.segments) {
      std::vector<DriveSpec> drives;
      if (s.drive) drives.push_back(*s.drive);
      if (mode == SimulationMode::full) {
        seq.push_back({build_h_interaction(active, s.modulations, drives, frame), s.duration, s.clock_offset});
      } else {
        seq.push_back({build_h_effective(active, s.modulations, drives), s.duration, s.clock_offset});
      }
    }
  }
  return seq;
}

ScenarioPlan plan_scenario(const ScenarioSpec& spec) {
  if (spec.grid_1q < 2) throw ConfigError(0, "grid-1q", "must be >= 2");
  if (spec.grid_2q < 1) throw ConfigError(0, "grid-2q", "must be >= 1");
  for (std::size_t i = 0; i < spec.kappas.size(); ++i) {
    if (!(spec.kappas[i] >= 0.0) || (i > 0 && spec.kappas[i] <= spec.kappas[i - 1])) {
      throw ConfigError(0, "kappa-khz", "rates must be non-negative and strictly ascending");
    }
  }
  if (spec.kappas.empty()) throw ConfigError(0, "kappa-khz", "empty sweep");
  switch (spec.name) {
    case ScenarioName::fig2_up: return plan_fig2(spec);
    case ScenarioName::fig3_swaplike: return plan_fig3(spec);
    case ScenarioName::fig4_sequence: return plan_fig4(spec);
    case ScenarioName::custom: return plan_custom(spec);
  }
  throw std::invalid_argument("unknown scenario");
}

ScenarioResult run_plan(const ScenarioPlan& plan, const ScenarioSpec& spec) {
  const std::size_t n = spec.kappas.size();
  std::vector<FidelityPoint> points(n);
  std::vector<HygieneReport> reports(n);
  std::vector<std::exception_ptr> errors(n);
  const ComplexMatrix p = computational_projector(plan.model);
  StateVector psi0 = StateVector::Zero(plan.inputs.front().size());
  for (std::size_t i = 0; i < plan.inputs.size(); ++i) psi0 += plan.initial[i] * plan.inputs[i];

  auto work = [&](std::size_t k) {
    try {
      const auto collapses = collapse_operators(
          plan.model, NoiseSpec::uniform(plan.model.qubits().size(), spec.kappas[k], spec.sqrt2_relaxation));
      const auto map = process_matrix(plan.sequence, collapses, plan.inputs, spec.step, &reports[k]);
      const FidelityKernel kernel(map, plan.outputs, plan.ideal);
      const ComplexMatrix rho = map.apply_state(psi0);
      reports[k].observe(DensityMatrix(rho));
      points[k].kappa = spec.kappas[k];
      points[k].state_fidelity = kernel(plan.initial);
      points[k].gate_fidelity =
          plan.grid_inputs == 1 ? gate_fidelity_1q(kernel, spec.grid_1q) : gate_fidelity_2q(kernel, spec.grid_2q);
      points[k].leakage = leakage(rho, p);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < n; k = next++) work(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ScenarioResult result;
  result.curve.points = std::move(points);
  for (const auto& r : reports) result.hygiene.merge(r);
  result.params = plan.params;
  result.curve.validate();
  return result;
}

ScenarioResult run_fig2(ScenarioSpec spec) {
  spec.name = ScenarioName::fig2_up;
  return run_scenario(spec);
}

ScenarioResult run_fig3(ScenarioSpec spec) {
  spec.name = ScenarioName::fig3_swaplike;
  return run_scenario(spec);
}

ScenarioResult run_fig4(ScenarioSpec spec) {
  spec.name = ScenarioName::fig4_sequence;
  return run_scenario(spec);
}

ScenarioResult run_custom(ScenarioSpec spec) {
  spec.name = ScenarioName::custom;
  return run_scenario(spec);
}

ScenarioResult run_scenario(const ScenarioSpec& spec) { return run_plan(plan_scenario(spec), spec); }

std::string to_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "# params: ";
  for (std::size_t i = 0; i < result.params.size(); ++i) {
    out << (i ? "; " : "") << result.params[i].first << "=" << result.params[i].second;
  }
  out << "\n";
  out << "kappa_over_2pi_kHz,state_fidelity,gate_fidelity,leakage\n";
  char buf[160];
  for (const auto& p : result.curve.points) {
    std::snprintf(buf, sizeof buf, "%s,%.12f,%.12f,%.6e\n", fmt(to_khz(p.kappa)).c_str(), p.state_fidelity,
                  p.gate_fidelity, p.leakage);
    out << buf;
  }
  return out.str();
}

std::vector<HolonomyCheck> check_holonomy(const ScenarioPlan& plan, SimulationMode mode, const ScenarioSpec& spec,
                                          int samples_per_segment) {
  if (samples_per_segment < 1) throw std::invalid_argument("check_holonomy: need at least one sample per segment");
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(plan.model));
  const FrameOptions frame{ModulationFrame::phase_factor, spec.include_higher_exchange};
  std::vector<HolonomyCheck> out;
  for (std::size_t g = 0; g < plan.recipes.size(); ++g) {
    const auto& r = plan.recipes[g];
    const auto basis = gate_basis(plan.model, r);
    const ComplexMatrix p = projector(basis);
    const auto windows = build_sequence(plan.model, {r}, mode, frame, spec.spectator_couplings);
    HolonomyCheck check;
    check.gate = "gate" + std::to_string(g + 1) + ":" + std::string(to_string(r.kind));

    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto& w : windows) {
      const auto& h = w.h;
      auto hamiltonian = [&](double t) { return h.at(t); };
      std::vector<PropagatorSample> samples;
      samples.push_back({w.clock_offset, u});
      const double dt = w.duration / samples_per_segment;
      for (int s = 1; s <= samples_per_segment; ++s) {
        const double t0 = w.clock_offset + dt * (s - 1);
        const double t1 = w.clock_offset + dt * s;
        if (mode == SimulationMode::effective) {
          u = matrix_exp(h.at(0.0), dt) * u;
        } else {
          ComplexMatrix next(dim, dim);
          for (Eigen::Index c = 0; c < dim; ++c) next.col(c) = propagate_unitary(h, u.col(c), t0, t1, spec.step);
          u = next;
        }
        samples.push_back({t1, u});
      }
      check.parallel_transport = std::max(check.parallel_transport, check_parallel_transport(hamiltonian, p, samples));
      for (const auto& s : samples) {
        check.projector_residual = std::max(check.projector_residual, (p * h.at(s.t) * p).norm());
      }
    }
    check.cyclic_overlap = check_cyclic(u, basis);

    // Auxiliary left in |0>.
    const auto dims = plan.model.dims();
    const auto aux = plan.model.index_of(r.auxiliary);
    double excited = 0.0;
    for (const auto& b : basis) {
      const StateVector psi = u * b;
      double ground = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index rest = i;
        for (std::size_t s = dims.size(); s-- > aux + 1;) rest /= dims[s];
        if (rest % dims[aux] == 0) ground += std::norm(psi(i));
      }
      excited = std::max(excited, 1.0 - ground);
    }
    check.auxiliary_excitation = excited;
    out.push_back(check);
  }
  return out;
}

}  // namespace nhqc
