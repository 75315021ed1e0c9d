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

#include "nhqc/holonomy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nhqc/errors.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

constexpr double kRatioTol = 1e-12;
constexpr double kAngleMatchTol = 1e-9;

struct BranchTargets {
  double p;
  double q;
  bool flipped;
};

std::vector<BranchTargets> branch_targets(Branch branch, bool allow_flip) {
  std::vector<BranchTargets> out;
  if (branch == Branch::G_I) {
    out.push_back({kPi / 2, kPi / 2, false});
    if (allow_flip) out.push_back({3 * kPi / 2, 3 * kPi / 2, true});
  } else {
    out.push_back({kPi / 2, 3 * kPi / 2, false});
    if (allow_flip) out.push_back({3 * kPi / 2, kPi / 2, true});
  }
  return out;
}

ComplexMatrix branch_matrix(Branch branch) {
  ComplexMatrix g = ComplexMatrix::Identity(2, 2);
  if (branch == Branch::G_z) g(1, 1) = -1.0;
  return g;
}

double modulation_frequency(const LatticeModel& model, const std::string& target, const std::string& auxiliary) {
  return model.qubit(target).detuning.rad_per_s() - model.qubit(auxiliary).detuning.rad_per_s();
}

double edge_strength(const LatticeModel& model, const std::string& a, const std::string& b) {
  const auto g = model.coupling(a, b);
  if (!g) throw ValidationError("no coupling between '" + a + "' and '" + b + "'");
  return g->rad_per_s();
}

void require_roles(const LatticeModel& model, const std::string& target, const std::string& auxiliary) {
  if (model.qubit(target).role != Role::target) throw ValidationError("'" + target + "' is not a target qubit");
  if (model.qubit(auxiliary).role != Role::auxiliary) {
    throw ValidationError("'" + auxiliary + "' is not an auxiliary qubit");
  }
}

ModulationSpec make_modulation(const LatticeModel& model, const std::string& target, const std::string& auxiliary,
                               double index, double phase) {
  const double nu = modulation_frequency(model, target, auxiliary);
  return ModulationSpec{target, index * nu, nu, phase};
}

double wrap_angle_diff(double x, double y) { return std::abs(std::remainder(x - y, kTwoPi)); }

std::vector<SegmentSchedule> orange_slice(double duration, const DriveSpec& drive, const ModulationSpec& mod,
                                          double second_phase) {
  SegmentSchedule first{duration, 0.0, drive, {mod}};
  DriveSpec d2 = drive;
  d2.phase = second_phase;
  SegmentSchedule second{duration, duration, d2, {mod}};
  return {first, second};
}

// ---- text helpers ----------------------------------------------------------

double parse_angle(const config::Entry& e) {
  // Accepts plain numbers and k*pi/d forms such as "pi/8", "3*pi/2", "-pi".
  const std::string& v = e.value;
  const auto pos = v.find("pi");
  if (pos == std::string::npos) return config::parse_double(e);
  double coef = 1.0;
  std::string head = v.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty() && head != "+") {
    coef = config::parse_double(config::Entry{e.key, head, e.line});
  }
  double denom = 1.0;
  const std::string tail = v.substr(pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError(e.line, e.key, "malformed angle '" + v + "'");
    denom = config::parse_double(config::Entry{e.key, tail.substr(1), e.line});
    if (denom == 0.0) throw ConfigError(e.line, e.key, "division by zero in angle '" + v + "'");
  }
  return coef * kPi / denom;
}

Branch parse_branch(const config::Entry& e) {
  if (e.value == "G_I") return Branch::G_I;
  if (e.value == "G_z") return Branch::G_z;
  throw ConfigError(e.line, e.key, "expected G_I or G_z, got '" + e.value + "'");
}

GateKind parse_kind(const config::Entry& e) {
  if (e.value == "rot_y") return GateKind::rot_y;
  if (e.value == "rot_z") return GateKind::rot_z;
  if (e.value == "two_qubit") return GateKind::two_qubit;
  throw ConfigError(e.line, e.key, "expected rot_y, rot_z or two_qubit, got '" + e.value + "'");
}

void reject_unknown(const config::Section& s, const std::vector<std::string>& allowed) {
  for (const auto& e : s.entries) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || e.key == a;
    if (!ok) throw ConfigError(e.line, e.key, "unknown field in [gate]");
  }
}

ComplexMatrix ideal_for(const GateRecipe& r) {
  switch (r.kind) {
    case GateKind::rot_y: return rot_y_matrix(r.theta);
    case GateKind::rot_z: return rot_z_matrix(r.gamma);
    case GateKind::two_qubit: return two_qubit_matrix(r.vartheta, r.varphi);
  }
  return {};
}

GateRecipe replay(const LatticeModel& model, const config::Section& s) {
  GateRecipe r;
  r.kind = parse_kind(s.require("kind"));
  r.theta = s.get_optional_double("theta").value_or(0.0);
  r.gamma = s.get_optional_double("gamma").value_or(0.0);
  r.vartheta = s.get_optional_double("vartheta").value_or(0.0);
  r.varphi = s.get_optional_double("varphi").value_or(0.0);
  r.targets = config::split_list(s.get_string("targets"), ',');
  r.auxiliary = s.get_string("auxiliary");
  if (const auto* b = s.find("branch")) r.branch = parse_branch(*b);
  r.a = s.get_optional_double("a").value_or(0.0);
  if (s.find("sign_flipped") != nullptr) r.sign_flipped = s.get_bool("sign_flipped");
  r.rate = mhz(s.get_optional_double("rate_MHz").value_or(0.0));
  for (const auto& t : r.targets) model.index_of(t);
  model.index_of(r.auxiliary);

  const int count = s.get_int("segment_count");
  if (count < 1) throw ConfigError(s.require("segment_count").line, "segment_count", "must be >= 1");
  std::vector<std::string> known = {"kind", "theta", "gamma", "vartheta", "varphi", "targets", "auxiliary",
                                    "branch", "a", "sign_flipped", "rate_MHz", "segment_count", "total_ns"};
  for (int k = 0; k < count; ++k) {
    const std::string p = "segment." + std::to_string(k) + ".";
    SegmentSchedule seg;
    seg.duration = ns(s.get_double(p + "duration_ns"));
    if (!(seg.duration > 0.0)) throw ConfigError(s.require(p + "duration_ns").line, p + "duration_ns", "must be > 0");
    seg.clock_offset = ns(s.get_optional_double(p + "clock_offset_ns").value_or(0.0));
    known.insert(known.end(), {p + "duration_ns", p + "clock_offset_ns", p + "drive.qubit", p + "drive.amplitude_MHz",
                               p + "drive.detuning_MHz", p + "drive.phase", p + "modulation_count"});
    if (const auto q = s.get_optional(p + "drive.qubit")) {
      model.index_of(*q);
      seg.drive = DriveSpec{*q, mhz(s.get_double(p + "drive.amplitude_MHz")),
                            mhz(s.get_optional_double(p + "drive.detuning_MHz").value_or(0.0)),
                            s.find(p + "drive.phase") ? parse_angle(*s.find(p + "drive.phase")) : 0.0};
    }
    const int mods = s.find(p + "modulation_count") ? s.get_int(p + "modulation_count") : 0;
    for (int j = 0; j < mods; ++j) {
      const std::string mp = p + "modulation." + std::to_string(j) + ".";
      ModulationSpec m;
      m.target = s.get_string(mp + "target");
      model.index_of(m.target);
      m.amplitude = mhz(s.get_double(mp + "amplitude_MHz"));
      m.frequency = mhz(s.get_double(mp + "frequency_MHz"));
      m.phase_offset = s.find(mp + "phase") ? parse_angle(*s.find(mp + "phase")) : 0.0;
      seg.modulations.push_back(m);
      known.insert(known.end(), {mp + "target", mp + "amplitude_MHz", mp + "frequency_MHz", mp + "phase"});
    }
    r.segments.push_back(std::move(seg));
  }
  reject_unknown(s, known);
  r.ideal_unitary = ideal_for(r);
  return r;
}

GateRecipe synthesize(const LatticeModel& model, const config::Section& s, const SynthesisOptions& options) {
  const GateKind kind = parse_kind(s.require("kind"));
  auto angle = [&](const char* key) { return parse_angle(s.require(key)); };
  auto opt_angle = [&](const char* key, double fallback) {
    return s.find(key) ? parse_angle(*s.find(key)) : fallback;
  };

  if (kind == GateKind::two_qubit) {
    reject_unknown(s, {"kind", "vartheta", "varphi", "targets", "auxiliary", "modulation_index_a",
                       "modulation_index_c", "rate_MHz"});
    const auto targets = config::split_list(s.get_string("targets"), ',');
    if (targets.size() != 2) {
      throw ConfigError(s.require("targets").line, "targets", "two_qubit needs exactly two targets");
    }
    const std::string aux = s.get_string("auxiliary");
    const double varphi = opt_angle("varphi", 0.0);
    TwoQubitControl control;
    if (s.find("rate_MHz") != nullptr) {
      control = calibrate_two_qubit(model, targets[0], aux, targets[1], angle("vartheta"), mhz(s.get_double("rate_MHz")));
    } else {
      control = TwoQubitControl{targets[0], aux, targets[1], s.get_double("modulation_index_a"),
                                s.get_double("modulation_index_c"), 0.0};
    }
    const double vartheta = s.find("vartheta") ? angle("vartheta") : two_qubit_angle(model, control);
    return make_two_qubit(vartheta, varphi, model, control);
  }

  reject_unknown(s, {"kind", "theta", "gamma", "target", "auxiliary", "rabi_MHz", "modulation_index", "drive_MHz",
                     "retune"});
  const std::string target = s.get_string("target");
  const std::string aux = s.get_string("auxiliary");
  if (kind == GateKind::rot_y) {
    const double theta = angle("theta");
    const auto control = calibrate_single_qubit(model, target, aux, theta, mhz(s.get_double("rabi_MHz")));
    return make_rot_y(theta, model, control, options);
  }
  SingleQubitControl control;
  if (s.find("rabi_MHz") != nullptr) {
    control = calibrate_single_qubit(model, target, aux, angle("theta"), mhz(s.get_double("rabi_MHz")));
  } else {
    control = SingleQubitControl{target, aux, s.get_double("modulation_index"), 0.0, mhz(s.get_double("drive_MHz"))};
  }
  const bool retune = s.find("retune") != nullptr && s.get_bool("retune");
  try {
    return make_rot_z(angle("gamma"), model, control, options);
  } catch (const UnsolvableDuration& e) {
    if (!retune) throw;
    return make_rot_z(angle("gamma"), model, retune_drive(model, control, e.nearest_theta()), options);
  }
}

}  // namespace

std::string_view to_string(Branch branch) { return branch == Branch::G_I ? "G_I" : "G_z"; }

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::rot_y: return "rot_y";
    case GateKind::rot_z: return "rot_z";
    case GateKind::two_qubit: return "two_qubit";
  }
  return "";
}

SegmentSolution solve_segment_duration(double theta, Branch branch, const SynthesisOptions& options) {
  if (options.max_windings < 0) throw std::invalid_argument("solve_segment_duration: max_windings must be >= 0");
  if (!std::isfinite(theta) || std::abs(std::sin(theta / 2)) < kRatioTol) {
    throw std::invalid_argument("solve_segment_duration: theta must not be a multiple of 2 pi");
  }
  const double target = std::cos(theta / 2);
  std::optional<SegmentSolution> best;
  double nearest_ratio = 0.0;
  double nearest_a = 0.0;
  double nearest_gap = std::numeric_limits<double>::infinity();

  for (const auto& bt : branch_targets(branch, options.allow_sign_flip)) {
    for (int m = 0; m <= options.max_windings; ++m) {
      for (int n = 0; n <= options.max_windings; ++n) {
        const double a = bt.p + bt.q + kTwoPi * (m + n);
        const double ratio = (bt.p - bt.q + kTwoPi * (m - n)) / a;
        const double gap = std::abs(ratio - target);
        if (gap <= kRatioTol) {
          if (!best || a < best->a - 1e-12) best = SegmentSolution{a, m, n, bt.flipped};
        }
        if (gap < nearest_gap - 1e-15 || (std::abs(gap - nearest_gap) <= 1e-15 && a < nearest_a)) {
          nearest_gap = gap;
          nearest_ratio = ratio;
          nearest_a = a;
        }
      }
    }
  }
  if (best) return *best;
  const double nearest_theta = 2.0 * std::acos(std::clamp(nearest_ratio, -1.0, 1.0));
  std::ostringstream msg;
  msg << "no segment duration for theta = " << theta << " on branch " << to_string(branch) << " within "
      << options.max_windings << " windings; nearest solvable theta = " << nearest_theta << " (a = " << nearest_a
      << ")";
  throw UnsolvableDuration(msg.str(), nearest_theta, nearest_a);
}

double congruence_residual(double a, double theta, Branch branch, bool sign_flipped) {
  const auto targets = branch_targets(branch, true);
  const auto& bt = targets[sign_flipped ? 1 : 0];
  const double c = std::cos(theta / 4);
  const double s = std::sin(theta / 4);
  const double r1 = std::remainder(a * c * c - bt.p, kTwoPi);
  const double r2 = std::remainder(a * s * s - bt.q, kTwoPi);
  return std::max(std::abs(r1), std::abs(r2));
}

// ---- controls --------------------------------------------------------------

double effective_exchange(const LatticeModel& model, const SingleQubitControl& control) {
  const double g = edge_strength(model, control.target, control.auxiliary);
  return bessel_j(1, control.modulation_index) * g * std::cos(control.modulation_phase);
}

double mixing_angle(const LatticeModel& model, const SingleQubitControl& control) {
  return 2.0 * std::atan2(control.drive_amplitude, effective_exchange(model, control));
}

double rabi_frequency(const LatticeModel& model, const SingleQubitControl& control) {
  return std::hypot(effective_exchange(model, control), control.drive_amplitude);
}

SingleQubitControl calibrate_single_qubit(const LatticeModel& model, const std::string& target,
                                          const std::string& auxiliary, double theta, double rabi) {
  require_roles(model, target, auxiliary);
  if (!(rabi > 0.0)) throw std::invalid_argument("calibrate_single_qubit: Rabi frequency must be > 0");
  const double g = edge_strength(model, target, auxiliary);
  double gp = rabi * std::cos(theta / 2);
  if (std::abs(gp) < 1e-12 * rabi) gp = 0.0;
  SingleQubitControl c{target, auxiliary, bessel_j1_inverse(std::abs(gp) / g), gp < 0.0 ? kPi : 0.0,
                       rabi * std::sin(theta / 2)};
  return c;
}

SingleQubitControl retune_drive(const LatticeModel& model, const SingleQubitControl& control, double theta) {
  const double gp = effective_exchange(model, control);
  if (gp == 0.0) throw std::domain_error("retune_drive: zero exchange rate fixes theta = pi");
  SingleQubitControl out = control;
  out.drive_amplitude = gp * std::tan(theta / 2);
  return out;
}

double two_qubit_angle(const LatticeModel& model, const TwoQubitControl& control) {
  const double ab = bessel_j(1, control.index_a) * edge_strength(model, control.target_a, control.auxiliary) *
                    std::cos(control.phase_a);
  const double bc = bessel_j(1, control.index_c) * edge_strength(model, control.target_c, control.auxiliary);
  return 2.0 * std::atan2(bc, ab);
}

double two_qubit_rate(const LatticeModel& model, const TwoQubitControl& control) {
  const double ab = bessel_j(1, control.index_a) * edge_strength(model, control.target_a, control.auxiliary);
  const double bc = bessel_j(1, control.index_c) * edge_strength(model, control.target_c, control.auxiliary);
  return std::hypot(ab, bc);
}

TwoQubitControl calibrate_two_qubit(const LatticeModel& model, const std::string& target_a,
                                    const std::string& auxiliary, const std::string& target_c, double vartheta,
                                    double rate) {
  require_roles(model, target_a, auxiliary);
  require_roles(model, target_c, auxiliary);
  if (!(rate > 0.0)) throw std::invalid_argument("calibrate_two_qubit: rate must be > 0");
  double ab = rate * std::cos(vartheta / 2);
  const double bc = rate * std::sin(vartheta / 2);
  if (bc < -1e-12 * rate) throw std::domain_error("calibrate_two_qubit: vartheta must lie in [0, 2 pi]");
  if (std::abs(ab) < 1e-12 * rate) ab = 0.0;
  return TwoQubitControl{target_a,
                         auxiliary,
                         target_c,
                         bessel_j1_inverse(std::abs(ab) / edge_strength(model, target_a, auxiliary)),
                         bessel_j1_inverse(std::max(bc, 0.0) / edge_strength(model, target_c, auxiliary)),
                         ab < 0.0 ? kPi : 0.0};
}

// ---- recipes ---------------------------------------------------------------

double GateRecipe::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

ComplexMatrix rot_y_matrix(double theta) {
  ComplexMatrix u(2, 2);
  u << std::cos(theta), -std::sin(theta),
       std::sin(theta), std::cos(theta);
  return u;
}

ComplexMatrix rot_z_matrix(double gamma) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, -gamma);
  u(1, 1) = std::polar(1.0, gamma);
  return u;
}

ComplexMatrix two_qubit_matrix(double vartheta, double varphi) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = std::cos(vartheta);
  u(1, 2) = -std::sin(vartheta) * std::polar(1.0, varphi);
  u(2, 1) = -std::sin(vartheta) * std::polar(1.0, -varphi);
  u(2, 2) = -std::cos(vartheta);
  u(3, 3) = -1.0;
  return u;
}

GateRecipe make_rot_z(double gamma, const LatticeModel& model, const SingleQubitControl& control,
                      const SynthesisOptions& options) {
  require_roles(model, control.target, control.auxiliary);
  const double theta = mixing_angle(model, control);
  const auto sol = solve_segment_duration(theta, Branch::G_z, options);
  const double rabi = rabi_frequency(model, control);

  GateRecipe r;
  r.kind = GateKind::rot_z;
  r.theta = theta;
  r.gamma = gamma;
  r.targets = {control.target};
  r.auxiliary = control.auxiliary;
  r.branch = Branch::G_z;
  r.a = sol.a;
  r.sign_flipped = sol.sign_flipped;
  r.rate = rabi;
  const auto mod = make_modulation(model, control.target, control.auxiliary, control.modulation_index,
                                   control.modulation_phase);
  r.segments = orange_slice(sol.a / rabi, DriveSpec{control.auxiliary, control.drive_amplitude, 0.0, 0.0}, mod, gamma);
  r.ideal_unitary = rot_z_matrix(gamma);
  return r;
}

GateRecipe make_rot_y(double theta, const LatticeModel& model, const SingleQubitControl& control,
                      const SynthesisOptions& options) {
  require_roles(model, control.target, control.auxiliary);
  const double mixing = mixing_angle(model, control);
  if (wrap_angle_diff(mixing, theta) > kAngleMatchTol) {
    throw std::invalid_argument("make_rot_y: control mixing angle does not match theta");
  }
  const auto sol = solve_segment_duration(theta, Branch::G_I, options);
  const double rabi = rabi_frequency(model, control);

  GateRecipe r;
  r.kind = GateKind::rot_y;
  r.theta = theta;
  r.gamma = kPi;
  r.targets = {control.target};
  r.auxiliary = control.auxiliary;
  r.branch = Branch::G_I;
  r.a = sol.a;
  r.sign_flipped = sol.sign_flipped;
  r.rate = rabi;
  const auto mod = make_modulation(model, control.target, control.auxiliary, control.modulation_index,
                                   control.modulation_phase);
  r.segments = orange_slice(sol.a / rabi, DriveSpec{control.auxiliary, control.drive_amplitude, 0.0, 0.0}, mod, kPi);
  r.ideal_unitary = rot_y_matrix(theta);
  return r;
}

GateRecipe make_two_qubit(double vartheta, double varphi, const LatticeModel& model, const TwoQubitControl& control) {
  require_roles(model, control.target_a, control.auxiliary);
  require_roles(model, control.target_c, control.auxiliary);
  if (control.target_a == control.target_c) throw std::invalid_argument("make_two_qubit: targets must differ");
  if (wrap_angle_diff(two_qubit_angle(model, control), vartheta) > kAngleMatchTol) {
    throw std::invalid_argument("make_two_qubit: control angle does not match vartheta");
  }
  const double g = two_qubit_rate(model, control);
  if (!(g > 0.0)) throw std::invalid_argument("make_two_qubit: zero exchange rate");

  GateRecipe r;
  r.kind = GateKind::two_qubit;
  r.vartheta = vartheta;
  r.varphi = varphi;
  r.targets = {control.target_a, control.target_c};
  r.auxiliary = control.auxiliary;
  r.a = kPi;
  r.rate = g;
  SegmentSchedule seg;
  seg.duration = kPi / g;
  seg.modulations = {
      make_modulation(model, control.target_a, control.auxiliary, control.index_a, control.phase_a),
      make_modulation(model, control.target_c, control.auxiliary, control.index_c, varphi),
  };
  r.segments = {seg};
  r.ideal_unitary = two_qubit_matrix(vartheta, varphi);
  return r;
}

ComplexMatrix ideal_conditional_decomposition(const GateRecipe& recipe, int auxiliary_state) {
  if (auxiliary_state != 0 && auxiliary_state != 1) {
    throw std::invalid_argument("ideal_conditional_decomposition: auxiliary state must be 0 or 1");
  }
  if (recipe.kind == GateKind::two_qubit) {
    const auto k = svd_k(recipe.vartheta, recipe.varphi);
    ComplexMatrix j = ComplexMatrix::Identity(4, 4);
    j(2, 2) = j(3, 3) = -1.0;
    const ComplexMatrix& x = auxiliary_state == 0 ? k.left : k.right();
    return x * j * x.adjoint();
  }
  ComplexMatrix g = branch_matrix(recipe.branch);
  if (recipe.sign_flipped) g = -g;
  const double second_phase = recipe.kind == GateKind::rot_y ? kPi : recipe.gamma;
  const auto f1 = svd_f(recipe.theta, 0.0);
  const auto f2 = svd_f(recipe.theta, second_phase);
  if (auxiliary_state == 0) return -f2.left * g * f2.right_adjoint * f1.right() * g * f1.left.adjoint();
  return -f2.right() * g * f2.left.adjoint() * f1.left * g * f1.right_adjoint;
}

std::vector<StateVector> gate_basis(const LatticeModel& model, const GateRecipe& recipe) {
  const auto dims = model.dims();
  std::vector<std::size_t> sites;
  for (const auto& t : recipe.targets) sites.push_back(model.index_of(t));
  const int n = static_cast<int>(sites.size());
  std::vector<StateVector> out;
  for (int k = 0; k < (1 << n); ++k) {
    std::vector<int> levels(dims.size(), 0);
    for (int b = 0; b < n; ++b) levels[sites[b]] = (k >> (n - 1 - b)) & 1;
    out.push_back(basis_state(dims, levels));
  }
  return out;
}

ComplexMatrix projector(std::span<const StateVector> basis) {
  if (basis.empty()) throw std::invalid_argument("projector: empty basis");
  const auto d = basis.front().size();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (const auto& b : basis) p += b * b.adjoint();
  return p;
}

ComplexMatrix restrict_to(const ComplexMatrix& u, std::span<const StateVector> basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = basis[i].dot(u * basis[j]);
  }
  return out;
}

ComplexMatrix effective_segment_hamiltonian(const LatticeModel& model, const SegmentSchedule& segment) {
  std::vector<DriveSpec> drives;
  if (segment.drive) {
    if (segment.drive->detuning != 0.0) {
      throw std::invalid_argument("effective_segment_hamiltonian: detuned drives are time dependent");
    }
    drives.push_back(*segment.drive);
  }
  return build_h_effective(model, segment.modulations, drives).at(0.0);
}

ComplexMatrix effective_propagator(const LatticeModel& model, const GateRecipe& recipe) {
  const auto d = static_cast<Eigen::Index>(hilbert_dim(model));
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (const auto& seg : recipe.segments) u = matrix_exp(effective_segment_hamiltonian(model, seg), seg.duration) * u;
  return u;
}

double check_parallel_transport(const std::function<ComplexMatrix(double)>& hamiltonian, const ComplexMatrix& p,
                                std::span<const PropagatorSample> samples) {
  if (samples.empty()) return (p * hamiltonian(0.0) * p).norm();
  double worst = 0.0;
  for (const auto& s : samples) {
    const ComplexMatrix m = p * s.u.adjoint() * hamiltonian(s.t) * s.u * p;
    worst = std::max(worst, m.norm());
  }
  return worst;
}

double check_cyclic(const ComplexMatrix& u, std::span<const StateVector> basis) {
  const ComplexMatrix p = projector(basis);
  double worst = 1.0;
  for (const auto& b : basis) worst = std::min(worst, (p * (u * b)).squaredNorm());
  return worst;
}

// ---- text form -------------------------------------------------------------

std::string serialize(const GateRecipe& r) {
  using config::format_double;
  std::ostringstream out;
  out << "[gate]\n"
      << "kind = " << to_string(r.kind) << "\n";
  if (r.kind == GateKind::two_qubit) {
    out << "vartheta = " << format_double(r.vartheta) << "\n"
        << "varphi = " << format_double(r.varphi) << "\n";
  } else {
    out << "theta = " << format_double(r.theta) << "\n"
        << "gamma = " << format_double(r.gamma) << "\n"
        << "branch = " << to_string(r.branch) << "\n"
        << "sign_flipped = " << (r.sign_flipped ? "true" : "false") << "\n";
  }
  out << "targets = ";
  for (std::size_t i = 0; i < r.targets.size(); ++i) out << (i ? ", " : "") << r.targets[i];
  out << "\n"
      << "auxiliary = " << r.auxiliary << "\n"
      << "a = " << format_double(r.a) << "\n"
      << "rate_MHz = " << format_double(to_mhz(r.rate)) << "\n"
      << "total_ns = " << format_double(to_ns(r.total_duration())) << "\n"
      << "segment_count = " << r.segments.size() << "\n";
  for (std::size_t k = 0; k < r.segments.size(); ++k) {
    const auto& s = r.segments[k];
    const std::string p = "segment." + std::to_string(k) + ".";
    out << p << "duration_ns = " << format_double(to_ns(s.duration)) << "\n"
        << p << "clock_offset_ns = " << format_double(to_ns(s.clock_offset)) << "\n";
    if (s.drive) {
      out << p << "drive.qubit = " << s.drive->qubit << "\n"
          << p << "drive.amplitude_MHz = " << format_double(to_mhz(s.drive->amplitude)) << "\n"
          << p << "drive.detuning_MHz = " << format_double(to_mhz(s.drive->detuning)) << "\n"
          << p << "drive.phase = " << format_double(s.drive->phase) << "\n";
    }
    out << p << "modulation_count = " << s.modulations.size() << "\n";
    for (std::size_t j = 0; j < s.modulations.size(); ++j) {
      const auto& m = s.modulations[j];
      const std::string mp = p + "modulation." + std::to_string(j) + ".";
      out << mp << "target = " << m.target << "\n"
          << mp << "amplitude_MHz = " << format_double(to_mhz(m.amplitude)) << "\n"
          << mp << "frequency_MHz = " << format_double(to_mhz(m.frequency)) << "\n"
          << mp << "phase = " << format_double(m.phase_offset) << "\n";
    }
  }
  return out.str();
}

GateRecipe recipe_from_section(const LatticeModel& model, const config::Section& section,
                               const SynthesisOptions& options) {
  if (section.name != "gate") throw ConfigError(section.line, "", "expected a [gate] section");
  if (section.find("segment_count") != nullptr) return replay(model, section);
  return synthesize(model, section, options);
}

std::vector<GateRecipe> load_recipes(const LatticeModel& model, std::string_view config_text,
                                     const SynthesisOptions& options) {
  std::vector<GateRecipe> out;
  for (const auto& s : config::parse(config_text)) {
    if (s.name == "gate") out.push_back(recipe_from_section(model, s, options));
  }
  return out;
}

}  // namespace nhqc
