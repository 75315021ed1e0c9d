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

// nhqc: sweeps, holonomy checks and recipe inspection.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/experiments.hpp"
#include "nhqc/units.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kInvariant = 3, kUnsolvable = 4 };

constexpr double kFullCyclicFloor = 0.99;

struct Options {
  std::string config_path;
  std::string mode = "full";
  std::vector<double> kappa_khz;
  std::string out;
  int grid_1q = 1001;
  int grid_2q = 100;
  int max_windings = 10;
  bool sqrt2_relaxation = false;
  bool strict_branch = false;
  bool spectator_couplings = false;
  std::string scenario = "fig2";
  int samples = 8;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "device (and gate) configuration file");
  cmd->add_option("--mode", o.mode, "full or effective Hamiltonian")->check(CLI::IsMember({"full", "effective"}));
  cmd->add_option("--kappa-khz", o.kappa_khz, "decoherence rates kappa/2pi in kHz")->delimiter(',');
  cmd->add_option("--grid-1q", o.grid_1q, "single-qubit input grid size");
  cmd->add_option("--grid-2q", o.grid_2q, "two-qubit input grid size per axis");
  cmd->add_option("--max-windings", o.max_windings, "winding search bound for segment durations");
  cmd->add_flag("--sqrt2-relaxation", o.sqrt2_relaxation, "use sqrt(2) on |1><2| of the relaxation operator");
  cmd->add_flag("--strict-branch", o.strict_branch, "disallow the sign-flipped duration branch");
  cmd->add_flag("--spectator-couplings", o.spectator_couplings, "keep couplings outside the active gate on");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nhqc::ConfigError(0, "config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nhqc::ScenarioName scenario_name(const std::string& s) {
  static const std::map<std::string, nhqc::ScenarioName> names{{"fig2", nhqc::ScenarioName::fig2_up},
                                                              {"fig3", nhqc::ScenarioName::fig3_swaplike},
                                                              {"fig4", nhqc::ScenarioName::fig4_sequence},
                                                              {"custom", nhqc::ScenarioName::custom}};
  return names.at(s);
}

nhqc::ScenarioSpec make_spec(const Options& o, nhqc::ScenarioName name) {
  nhqc::ScenarioSpec spec;
  spec.name = name;
  spec.mode = o.mode == "full" ? nhqc::SimulationMode::full : nhqc::SimulationMode::effective;
  if (!o.config_path.empty()) spec.config_text = read_file(o.config_path);
  if (name == nhqc::ScenarioName::custom && spec.config_text.empty()) {
    throw nhqc::ConfigError(0, "config", "custom scenario requires --config");
  }
  if (!o.kappa_khz.empty()) {
    spec.kappas.clear();
    for (double k : o.kappa_khz) spec.kappas.push_back(nhqc::khz(k));
  }
  spec.grid_1q = o.grid_1q;
  spec.grid_2q = o.grid_2q;
  if (o.max_windings < 0) throw nhqc::ConfigError(0, "max-windings", "must be >= 0");
  spec.synthesis = nhqc::SynthesisOptions{o.max_windings, !o.strict_branch};
  spec.sqrt2_relaxation = o.sqrt2_relaxation;
  spec.spectator_couplings = o.spectator_couplings;
  return spec;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw nhqc::ConfigError(0, "out", "cannot write '" + o.out + "'");
  f << text;
}

int run_sweep(const Options& o, nhqc::ScenarioName name) {
  const auto result = nhqc::run_scenario(make_spec(o, name));
  emit(o, nhqc::to_csv(result));
  return kOk;
}

int run_check(const Options& o) {
  const auto spec = make_spec(o, scenario_name(o.scenario));
  const auto plan = nhqc::plan_scenario(spec);
  const auto checks = nhqc::check_holonomy(plan, spec.mode, spec, o.samples);
  std::ostringstream out;
  out << "gate,mode,parallel_transport_MHz,projector_residual_MHz,cyclic_overlap,auxiliary_excitation\n";
  bool ok = true;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.6e,%.6e,%.12f,%.6e\n", c.gate.c_str(), o.mode.c_str(),
                  nhqc::to_mhz(c.parallel_transport), nhqc::to_mhz(c.projector_residual), c.cyclic_overlap,
                  c.auxiliary_excitation);
    out << buf;
    if (spec.mode == nhqc::SimulationMode::full && c.cyclic_overlap < kFullCyclicFloor) ok = false;
  }
  emit(o, out.str());
  if (!ok) {
    std::cerr << "nhqc: cyclic overlap below " << kFullCyclicFloor << " in full mode\n";
    return kInvariant;
  }
  return kOk;
}

int run_dump(const Options& o) {
  const auto spec = make_spec(o, scenario_name(o.scenario));
  const auto plan = nhqc::plan_scenario(spec);
  std::ostringstream out;
  out << nhqc::serialize(plan.model);
  for (const auto& r : plan.recipes) out << "\n" << nhqc::serialize(r);
  emit(o, out.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate simulator for transmon lattices"};
  app.require_subcommand(1);
  Options o;

  std::map<CLI::App*, nhqc::ScenarioName> sweeps;
  for (auto [cmd, name, help] : {std::tuple{"fig2", nhqc::ScenarioName::fig2_up, "phase gate sweep"},
                                 std::tuple{"fig3", nhqc::ScenarioName::fig3_swaplike, "SWAP-like gate sweep"},
                                 std::tuple{"fig4", nhqc::ScenarioName::fig4_sequence, "three-gate sequence sweep"},
                                 std::tuple{"custom", nhqc::ScenarioName::custom, "gates from --config"}}) {
    auto* sub = app.add_subcommand(cmd, help);
    add_common(sub, o);
    sub->add_option("--out", o.out, "CSV output path (stdout if omitted)");
    sweeps[sub] = name;
  }
  auto* check = app.add_subcommand("check-holonomy", "parallel-transport and cyclicity diagnostics");
  add_common(check, o);
  check->add_option("scenario", o.scenario, "fig2, fig3, fig4 or custom")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "custom"}));
  check->add_option("--samples", o.samples, "propagator samples per segment");
  check->add_option("--out", o.out, "CSV output path (stdout if omitted)");
  auto* dump = app.add_subcommand("recipe-dump", "print the device and synthesized gate recipes");
  add_common(dump, o);
  dump->add_option("scenario", o.scenario, "fig2, fig3, fig4 or custom")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "custom"}));
  dump->add_option("--out", o.out, "output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    for (const auto& [sub, name] : sweeps) {
      if (sub->parsed()) return run_sweep(o, name);
    }
    if (check->parsed()) return run_check(o);
    if (dump->parsed()) return run_dump(o);
  } catch (const nhqc::ConfigError& e) {
    std::cerr << "nhqc: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const nhqc::ValidationError& e) {
    std::cerr << "nhqc: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const nhqc::InvariantBreach& e) {
    std::cerr << "nhqc: invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const nhqc::UnsolvableDuration& e) {
    std::cerr << "nhqc: unsolvable duration: " << e.what() << " (nearest theta " << e.nearest_theta() << ")\n";
    return kUnsolvable;
  } catch (const std::exception& e) {
    std::cerr << "nhqc: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
