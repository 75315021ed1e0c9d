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

// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nhqc/experiments.hpp"
#include "nhqc/units.hpp"

using namespace nhqc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ScenarioSpec spec_for(ScenarioName name, SimulationMode mode, std::vector<double> kappas) {
  ScenarioSpec s;
  s.name = name;
  s.mode = mode;
  s.kappas = std::move(kappas);
  return s;
}

const FidelityPoint& at(const ScenarioResult& r, double kappa) {
  for (const auto& p : r.curve.points)
    if (std::abs(p.kappa - kappa) < 1e-9) return p;
  throw std::runtime_error("kappa not in sweep");
}

// Smallest a over windings (m, n) <= 10 satisfying both segment congruences,
// found by direct enumeration of the two windings.
double enumerate_a(double theta, double p, double q) {
  const double c2 = std::pow(std::cos(theta / 4), 2), s2 = std::pow(std::sin(theta / 4), 2);
  double best = -1.0;
  for (int m = 0; m <= 10; ++m) {
    for (int n = 0; n <= 10; ++n) {
      const double a1 = (p + kTwoPi * m) / c2;
      const double a2 = (q + kTwoPi * n) / s2;
      if (std::abs(a1 - a2) < 1e-9 * a1 && (best < 0 || a1 < best)) best = a1;
    }
  }
  return best;
}

struct Hygiene {
  HygieneReport report;
  void add(const ScenarioResult& r) { report.merge(r.hygiene); }
};

}  // namespace

int main() {
  Hygiene hygiene;
  const auto all_kappas = default_kappa_grid();

  // 1. Phase-gate sweep in the full model.
  const auto t1 = Clock::now();
  const auto fig2 = run_fig2(spec_for(ScenarioName::fig2_up, SimulationMode::full, all_kappas));
  const double fig2_s = seconds_since(t1);
  hygiene.add(fig2);
  const auto& p2 = at(fig2, khz(5));
  const auto fig2_plan = plan_scenario(spec_for(ScenarioName::fig2_up, SimulationMode::full, {0.0}));
  {
    const bool ok_fp = std::abs(p2.state_fidelity - 0.9964) <= 0.003;
    const bool ok_fg = std::abs(p2.gate_fidelity - 0.9963) <= 0.003;
    const bool ok_t = fig2_s < 600.0 && fig2.curve.points.size() == 11;
    report(1, ok_fp && ok_fg && ok_t,
           "F_P(5kHz)=" + fmt("%.6f", p2.state_fidelity) + (ok_fp ? " ok" : " out of 0.9964+-0.003") +
               ", F^G_P(5kHz)=" + fmt("%.6f", p2.gate_fidelity) + (ok_fg ? " ok" : " out of 0.9963+-0.003") +
               ", 11-point sweep " + fmt("%.1f", fig2_s) + " s, schedule " +
               fmt("%.1f", to_ns(fig2_plan.recipes[0].total_duration())) + " ns");
  }

  // 2. SWAP-like gate at 10 kHz through the process-matrix path.
  const auto t2 = Clock::now();
  auto fig3_spec = spec_for(ScenarioName::fig3_swaplike, SimulationMode::full, {khz(10)});
  const auto fig3 = run_fig3(fig3_spec);
  const double fig3_s = seconds_since(t2);
  hygiene.add(fig3);
  {
    const double fg = fig3.curve.points[0].gate_fidelity;
    const bool ok = std::abs(fg - 0.9941) <= 0.004 && fig3_s < 1800.0;
    report(2, ok,
           "F^G_S(10kHz)=" + fmt("%.6f", fg) + " (target 0.9941+-0.004), 100x100 grid, 27x27 process map " +
               fmt("%.1f", fig3_s) + " s");
  }

  // 3. Three-gate sequence at 5 kHz.
  auto fig4_spec = spec_for(ScenarioName::fig4_sequence, SimulationMode::full, {khz(5)});
  const auto fig4 = run_fig4(fig4_spec);
  hygiene.add(fig4);
  {
    const auto& p = fig4.curve.points[0];
    const bool ok = p.state_fidelity >= 0.985 && p.gate_fidelity >= 0.985;
    report(3, ok,
           "F_G(5kHz)=" + fmt("%.6f", p.state_fidelity) + ", F^G_G(5kHz)=" + fmt("%.6f", p.gate_fidelity) +
               " (need >= 0.985; drive retuned to nearest solvable mixing angle, see params header)");
  }

  // 4. Closed-form gates from effective propagation; duration enumeration.
  {
    double worst = 0.0;
    std::vector<std::pair<LatticeModel, GateRecipe>> recipes;
    for (auto name : {ScenarioName::fig2_up, ScenarioName::fig3_swaplike, ScenarioName::fig4_sequence}) {
      for (bool flip : {true, false}) {
        auto s = spec_for(name, SimulationMode::effective, {0.0});
        s.synthesis.allow_sign_flip = flip;
        const auto plan = plan_scenario(s);
        for (const auto& r : plan.recipes) recipes.emplace_back(plan.model, r);
      }
    }
    const auto pair = subsystem(reference_lattice(), {"A", "B"});
    for (double theta : {kPi, 2 * std::acos(2.0 / 3.0), 2 * std::acos(-2.0 / 7.0)}) {
      recipes.emplace_back(pair, make_rot_y(theta, pair, calibrate_single_qubit(pair, "A", "B", theta, mhz(8.0))));
    }
    for (const auto& [model, r] : recipes) {
      const auto u = restrict_to(effective_propagator(model, r), gate_basis(model, r));
      worst = std::max(worst, phase_insensitive_distance(u, r.ideal_unitary));
    }
    // Independent closed forms.
    ComplexMatrix vs = ComplexMatrix::Zero(4, 4);
    vs(0, 0) = 1.0;
    vs(1, 2) = 1.0;
    vs(2, 1) = 1.0;
    vs(3, 3) = -1.0;
    const auto chain = subsystem(reference_lattice(), {"A", "B", "C"});
    const auto swap = make_two_qubit(kPi / 2, kPi, chain, {"A", "B", "C", 1.6, 1.6, 0.0});
    worst = std::max(worst, phase_insensitive_distance(
                                restrict_to(effective_propagator(chain, swap), gate_basis(chain, swap)), vs));
    ComplexMatrix up = ComplexMatrix::Identity(2, 2);
    up(1, 1) = std::polar(1.0, kPi / 4);
    const auto& phase_gate = recipes.front();
    worst = std::max(worst, phase_insensitive_distance(
                                restrict_to(effective_propagator(phase_gate.first, phase_gate.second),
                                            gate_basis(phase_gate.first, phase_gate.second)),
                                up));
    const double g = two_qubit_rate(chain, {"A", "B", "C", 1.6, 1.6, 0.0});
    const double t_err = std::abs(swap.total_duration() - kPi / g) / (kPi / g);
    const double a = solve_segment_duration(2 * kPi / 3, Branch::G_z, 10);
    const double a_enum = enumerate_a(2 * kPi / 3, kPi / 2, 3 * kPi / 2);
    const bool ok = worst <= 1e-8 && t_err <= 1e-12 && std::abs(a - 6 * kPi) < 1e-12 &&
                    std::abs(a_enum - 6 * kPi) < 1e-9;
    report(4, ok,
           std::to_string(recipes.size() + 2) + " recipes, max operator distance " + fmt("%.2e", worst) +
               ", T*g/pi-1=" + fmt("%.1e", t_err) + ", a(2pi/3,G_z)=" + fmt("%.6f", a / kPi) +
               " pi (enumeration " + fmt("%.6f", a_enum / kPi) + " pi)");
  }

  // 5. Holonomy conditions.
  std::vector<ScenarioPlan> full_plans;
  {
    double residual = 0.0, eff_cyc = 1.0, full_cyc = 1.0, aux = 0.0;
    for (auto name : {ScenarioName::fig2_up, ScenarioName::fig3_swaplike, ScenarioName::fig4_sequence}) {
      const auto eff_spec = spec_for(name, SimulationMode::effective, {0.0});
      const auto eff = plan_scenario(eff_spec);
      for (const auto& c : check_holonomy(eff, SimulationMode::effective, eff_spec)) {
        residual = std::max(residual, c.projector_residual);
        eff_cyc = std::min(eff_cyc, c.cyclic_overlap);
        aux = std::max(aux, c.auxiliary_excitation);
      }
      const auto full_spec = spec_for(name, SimulationMode::full, {0.0});
      full_plans.push_back(plan_scenario(full_spec));
      for (const auto& c : check_holonomy(full_plans.back(), SimulationMode::full, full_spec, 2)) {
        full_cyc = std::min(full_cyc, c.cyclic_overlap);
      }
    }
    const bool ok = residual == 0.0 && std::abs(eff_cyc - 1.0) <= 1e-10 && full_cyc >= 0.99 && aux <= 1e-8;
    report(5, ok,
           "max ||P H P|| " + fmt("%.1e", residual) + ", effective cyclic 1-" + fmt("%.1e", 1.0 - eff_cyc) +
               ", full cyclic min " + fmt("%.6f", full_cyc) + ", effective auxiliary excitation " + fmt("%.1e", aux));
  }

  // 6. Full versus effective propagation at zero noise.
  {
    double worst = 0.0;
    std::string per;
    for (const auto& full : full_plans) {
      auto eff_spec = spec_for(full.name, SimulationMode::effective, {0.0});
      const auto eff = plan_scenario(eff_spec);
      auto restricted = [](const ScenarioPlan& p) {
        const ComplexMatrix cols = propagate_columns(p.sequence, p.inputs);
        ComplexMatrix m(p.outputs.size(), p.inputs.size());
        for (std::size_t k = 0; k < p.outputs.size(); ++k)
          for (std::size_t j = 0; j < p.inputs.size(); ++j) m(k, j) = p.outputs[k].dot(cols.col(j));
        return m;
      };
      const double infid = 1.0 - operator_fidelity(restricted(full), restricted(eff));
      worst = std::max(worst, infid);
      per += std::string(per.empty() ? "" : ", ") + std::string(to_string(full.name)) + " " + fmt("%.4f", infid);
    }
    report(6, worst <= 0.01, "operator infidelity full vs effective: " + per + " (limit 0.01)");
  }

  // 7. Numerical hygiene, step doubling, SVD and Bessel checks.
  {
    double doubling = 0.0;
    auto probe = [&](ScenarioSpec s, const FidelityPoint& base) {
      s.step.subdivide = 2;
      const auto r = run_scenario(s);
      hygiene.add(r);
      const auto& p = r.curve.points[0];
      doubling = std::max({doubling, std::abs(p.state_fidelity - base.state_fidelity),
                           std::abs(p.gate_fidelity - base.gate_fidelity)});
    };
    probe(spec_for(ScenarioName::fig2_up, SimulationMode::full, {khz(5)}), p2);
    probe(fig3_spec, fig3.curve.points[0]);
    probe(fig4_spec, fig4.curve.points[0]);

    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    double svd = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double x = angle(rng), y = angle(rng);
      svd = std::max(svd, max_abs(svd_f(x, y).product() - coupling_block_f(x, y)));
      svd = std::max(svd, max_abs(svd_k(x, y).product() - coupling_block_k(x, y)));
    }
    double bessel = 0.0;
    for (int m = 1; m <= 15; ++m)
      for (double x = 0.1; x <= 20.0; x += 0.05)
        bessel = std::max(bessel, std::abs(bessel_j(m - 1, x) + bessel_j(m + 1, x) - 2.0 * m / x * bessel_j(m, x)));

    const auto& h = hygiene.report;
    const bool ok = h.trace_drift <= 1e-8 && h.hermiticity <= 1e-10 && h.min_eigenvalue >= -1e-7 &&
                    doubling <= 1e-8 && svd <= 1e-12 && bessel <= 1e-10;
    report(7, ok,
           "trace drift " + fmt("%.1e", h.trace_drift) + ", hermiticity " + fmt("%.1e", h.hermiticity) +
               ", min eigenvalue " + fmt("%.1e", h.min_eigenvalue) + ", step doubling " + fmt("%.1e", doubling) +
               ", SVD " + fmt("%.1e", svd) + ", Bessel recurrence " + fmt("%.1e", bessel));
  }

  return failures == 0 ? 0 : 1;
}
