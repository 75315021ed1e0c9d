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

#include "nhqc/frame_builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nhqc/errors.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

constexpr double kBesselMaxArgument = 20.0;
// First maximum of J_1.
constexpr double kJ1PeakArgument = 1.8411837813406593;

// Miller's backward recurrence normalised with J_0 + 2 sum_k J_{2k} = 1.
// Accurate to a few ulps of 1 for 0 < x <= 20.
double bessel_j_miller(int m, double x) {
  const int top = 2 * ((std::max(m, static_cast<int>(x)) + 40) / 2);
  double next = 0.0;  // J_{k+1}
  double cur = 1e-30; // J_k, arbitrary scale
  double result = 0.0;
  double norm = 0.0;
  for (int k = top; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == m) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      next *= 1e-250;
      cur *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  if (m == top) result = 1e-30;
  norm += cur;  // J_0
  return result / norm;
}

std::vector<int> strides(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

int total_dim(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

int level_of(int index, const std::vector<int>& dims, const std::vector<int>& st, std::size_t site) {
  return (index / st[site]) % dims[site];
}

// Basis pairs (row, col) where `site_up` goes j -> j+1 and `site_down` goes
// k+1 -> k, every other factor untouched.
std::vector<SparseEntry> exchange_entries(const std::vector<int>& dims, std::size_t site_up, int j,
                                          std::size_t site_down, int k, double weight) {
  const auto st = strides(dims);
  std::vector<SparseEntry> out;
  for (int col = 0; col < total_dim(dims); ++col) {
    if (level_of(col, dims, st, site_up) != j || level_of(col, dims, st, site_down) != k + 1) continue;
    const int row = col + st[site_up] - st[site_down];
    out.push_back({row, col, weight});
  }
  return out;
}

std::vector<SparseEntry> raising_entries(const std::vector<int>& dims, std::size_t site, int j, double weight) {
  const auto st = strides(dims);
  std::vector<SparseEntry> out;
  for (int col = 0; col < total_dim(dims); ++col) {
    if (level_of(col, dims, st, site) != j) continue;
    out.push_back({col + st[site], col, weight});
  }
  return out;
}

std::vector<SparseEntry> number_entries(const std::vector<int>& dims, std::size_t site) {
  const auto st = strides(dims);
  std::vector<SparseEntry> out;
  for (int i = 0; i < total_dim(dims); ++i) {
    const int n = level_of(i, dims, st, site);
    if (n > 0) out.push_back({i, i, static_cast<double>(n)});
  }
  return out;
}

const ModulationSpec* modulation_for(std::span<const ModulationSpec> mods, const std::string& label) {
  for (const auto& m : mods) {
    if (m.target == label) return &m;
  }
  return nullptr;
}

void check_controls(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                    std::span<const DriveSpec> drives) {
  for (std::size_t i = 0; i < modulations.size(); ++i) {
    const auto& m = modulations[i];
    if (model.qubit(m.target).role != Role::target) {
      throw std::invalid_argument("modulation on '" + m.target + "': only target transmons are flux-modulated");
    }
    if (!(m.frequency > 0.0)) throw std::invalid_argument("modulation on '" + m.target + "': frequency must be > 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (modulations[j].target == m.target) {
        throw std::invalid_argument("two modulations on '" + m.target + "'");
      }
    }
  }
  for (const auto& d : drives) model.index_of(d.qubit);
}

}  // namespace

double bessel_j(int m, double beta) {
  if (!(std::abs(beta) <= kBesselMaxArgument)) {
    throw std::domain_error("bessel_j: |beta| must be <= 20");
  }
  if (m < 0) {
    const double v = bessel_j(-m, beta);
    return (m % 2 == 0) ? v : -v;
  }
  if (beta < 0.0) {
    const double v = bessel_j(m, -beta);
    return (m % 2 == 0) ? v : -v;
  }
  if (beta == 0.0) return m == 0 ? 1.0 : 0.0;
  return bessel_j_miller(m, beta);
}

double bessel_j1_inverse(double ratio) {
  const double peak = bessel_j(1, kJ1PeakArgument);
  if (ratio < 0.0 || ratio > peak) {
    throw std::domain_error("bessel_j1_inverse: ratio outside [0, max J1]");
  }
  double lo = 0.0;
  double hi = kJ1PeakArgument;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(1, mid) < ratio ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Complex effective_coupling(double g, const ModulationSpec& mod) {
  return g * bessel_j(1, mod.index()) * std::polar(1.0, mod.phase_offset);
}

Complex ModulationTrack::at(double t) const {
  return std::polar(1.0, -index * std::cos(frequency * t + phase + kPi / 2));
}

TimeDependentHamiltonian::TimeDependentHamiltonian(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidDimension("TimeDependentHamiltonian: dimension must be positive");
}

int TimeDependentHamiltonian::add_track(ModulationTrack track) {
  tracks_.push_back(track);
  return static_cast<int>(tracks_.size()) - 1;
}

void TimeDependentHamiltonian::add_exchange(ExchangeTerm term) {
  if (term.track >= static_cast<int>(tracks_.size())) throw std::out_of_range("add_exchange: unknown track");
  for (const auto& e : term.entries) {
    if (e.row == e.col) throw std::invalid_argument("add_exchange: entries must be off-diagonal");
    if (e.row < 0 || e.col < 0 || e.row >= dim_ || e.col >= dim_) throw InvalidDimension("add_exchange: entry out of range");
  }
  exchange_.push_back(std::move(term));
  // Slots of exchange terms come first, diagonal slots after; rebuilt here.
  rows_.clear();
  cols_.clear();
  for (const auto& t : exchange_) {
    for (const auto& e : t.entries) {
      rows_.push_back(e.row);
      cols_.push_back(e.col);
      rows_.push_back(e.col);
      cols_.push_back(e.row);
    }
  }
  for (const auto& t : diagonal_) {
    for (const auto& e : t.entries) {
      rows_.push_back(e.row);
      cols_.push_back(e.col);
    }
  }
}

void TimeDependentHamiltonian::add_diagonal(DiagonalTerm term) {
  for (const auto& e : term.entries) {
    if (e.row != e.col) throw std::invalid_argument("add_diagonal: entries must be diagonal");
    if (e.row < 0 || e.row >= dim_) throw InvalidDimension("add_diagonal: entry out of range");
    rows_.push_back(e.row);
    cols_.push_back(e.col);
  }
  diagonal_.push_back(std::move(term));
}

void TimeDependentHamiltonian::values(double t, std::span<Complex> out) const {
  std::size_t k = 0;
  for (const auto& term : exchange_) {
    Complex coef = term.amplitude * std::polar(1.0, -term.frequency * t);
    if (term.track >= 0) {
      const Complex f = tracks_[term.track].at(t);
      coef *= term.power >= 0 ? f : std::conj(f);
    }
    const Complex coef_conj = std::conj(coef);
    for (const auto& e : term.entries) {
      out[k++] = coef * e.weight;
      out[k++] = coef_conj * e.weight;
    }
  }
  for (const auto& term : diagonal_) {
    const double coef = term.amplitude * std::sin(term.frequency * t + term.phase);
    for (const auto& e : term.entries) out[k++] = coef * e.weight;
  }
}

ComplexMatrix TimeDependentHamiltonian::at(double t) const {
  std::vector<Complex> vals(nnz());
  values(t, vals);
  ComplexMatrix h = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < vals.size(); ++k) h(rows_[k], cols_[k]) += vals[k];
  return h;
}

double TimeDependentHamiltonian::max_frequency() const {
  double w = 0.0;
  for (const auto& term : exchange_) {
    double f = std::abs(term.frequency);
    if (term.track >= 0) {
      const auto& tr = tracks_[term.track];
      f += (std::ceil(std::abs(tr.index)) + 3.0) * tr.frequency;
    }
    w = std::max(w, f);
  }
  for (const auto& term : diagonal_) w = std::max(w, std::abs(term.frequency));
  return w;
}

double TimeDependentHamiltonian::max_amplitude() const {
  double a = 0.0;
  for (const auto& term : exchange_) {
    for (const auto& e : term.entries) a = std::max(a, std::abs(term.amplitude) * std::abs(e.weight));
  }
  for (const auto& term : diagonal_) {
    for (const auto& e : term.entries) a = std::max(a, std::abs(term.amplitude) * std::abs(e.weight));
  }
  return a;
}

TimeDependentHamiltonian build_h_interaction(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                             std::span<const DriveSpec> drives, const FrameOptions& options) {
  check_controls(model, modulations, drives);
  const auto dims = model.dims();
  TimeDependentHamiltonian h(total_dim(dims));

  std::vector<int> track_of(model.qubits().size(), -1);
  for (const auto& m : modulations) {
    const auto site = model.index_of(m.target);
    if (options.frame == ModulationFrame::phase_factor) {
      track_of[site] = h.add_track({m.index(), m.frequency, m.phase_offset});
    } else {
      h.add_diagonal({m.amplitude, m.frequency, m.phase_offset + kPi / 2, number_entries(dims, site)});
    }
  }

  for (const auto& c : model.couplings()) {
    auto up = model.index_of(c.a);
    auto down = model.index_of(c.b);
    // Orient every edge as (target raised, auxiliary lowered); the H.c. part
    // covers the reverse process.
    if (model.qubits()[up].role != Role::target) std::swap(up, down);
    const auto& qu = model.qubits()[up];
    const auto& qd = model.qubits()[down];
    const double g = c.g.rad_per_s();
    for (int j = 0; j + 1 < qu.levels; ++j) {
      for (int k = 0; k + 1 < qd.levels; ++k) {
        if (!options.include_higher_exchange && j >= 1 && k >= 1) continue;
        ExchangeTerm term;
        term.amplitude = g * std::sqrt(static_cast<double>(j + 1)) * std::sqrt(static_cast<double>(k + 1));
        term.frequency = (qu.detuning.rad_per_s() + j * qu.anharmonicity.rad_per_s()) -
                         (qd.detuning.rad_per_s() + k * qd.anharmonicity.rad_per_s());
        if (track_of[up] >= 0) {
          term.track = track_of[up];
          term.power = +1;
        }
        term.entries = exchange_entries(dims, up, j, down, k, 1.0);
        h.add_exchange(std::move(term));
      }
    }
  }

  for (const auto& d : drives) {
    const auto site = model.index_of(d.qubit);
    const auto& q = model.qubits()[site];
    for (int j = 0; j + 1 < q.levels; ++j) {
      ExchangeTerm term;
      term.amplitude = 0.5 * d.amplitude * std::sqrt(static_cast<double>(j + 1)) * std::polar(1.0, d.phase);
      term.frequency = j * q.anharmonicity.rad_per_s() - d.detuning;
      term.entries = raising_entries(dims, site, j, 1.0);
      h.add_exchange(std::move(term));
    }
  }
  return h;
}

TimeDependentHamiltonian build_h_interaction_2t(const LatticeModel& model, const ModulationSpec& modulation,
                                                const DriveSpec& drive, const FrameOptions& options) {
  if (model.qubits().size() != 2 || model.couplings().size() != 1) {
    throw std::invalid_argument("build_h_interaction_2t: expected one target and one auxiliary");
  }
  const ModulationSpec mods[] = {modulation};
  const DriveSpec drives[] = {drive};
  return build_h_interaction(model, mods, drives, options);
}

TimeDependentHamiltonian build_h_interaction_3t(const LatticeModel& model,
                                                const std::pair<ModulationSpec, ModulationSpec>& modulations,
                                                const FrameOptions& options) {
  const auto& q = model.qubits();
  if (q.size() != 3 || model.couplings().size() != 2 ||
      std::count_if(q.begin(), q.end(), [](const auto& t) { return t.role == Role::auxiliary; }) != 1) {
    throw std::invalid_argument("build_h_interaction_3t: expected a target-auxiliary-target chain");
  }
  const ModulationSpec mods[] = {modulations.first, modulations.second};
  return build_h_interaction(model, mods, {}, options);
}

ComplexMatrix modulation_frame_transform(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                         double t) {
  const auto dims = model.dims();
  const auto st = strides(dims);
  const int n = total_dim(dims);
  Eigen::VectorXd phase = Eigen::VectorXd::Zero(n);
  for (const auto& m : modulations) {
    const auto site = model.index_of(m.target);
    const double theta = -m.index() * std::cos(m.frequency * t + m.phase_offset + kPi / 2);
    for (int i = 0; i < n; ++i) phase(i) += level_of(i, dims, st, site) * theta;
  }
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) v(i, i) = std::polar(1.0, phase(i));
  return v;
}

TimeDependentHamiltonian build_h_effective(const LatticeModel& model, std::span<const ModulationSpec> modulations,
                                           std::span<const DriveSpec> drives) {
  check_controls(model, modulations, drives);
  const auto dims = model.dims();
  TimeDependentHamiltonian h(total_dim(dims));

  for (const auto& c : model.couplings()) {
    auto up = model.index_of(c.a);
    auto down = model.index_of(c.b);
    if (model.qubits()[up].role != Role::target) std::swap(up, down);
    const auto& qu = model.qubits()[up];
    const auto& qd = model.qubits()[down];
    const ModulationSpec* mod = modulation_for(modulations, qu.label);
    if (mod == nullptr) continue;
    const double bridge = qu.detuning.rad_per_s() - qd.detuning.rad_per_s();
    if (std::abs(mod->frequency - bridge) > 1e-9 * std::abs(bridge)) continue;
    ExchangeTerm term;
    term.amplitude = effective_coupling(c.g.rad_per_s(), *mod);
    term.entries = exchange_entries(dims, up, 0, down, 0, 1.0);
    h.add_exchange(std::move(term));
  }
  for (const auto& d : drives) {
    ExchangeTerm term;
    term.amplitude = 0.5 * d.amplitude * std::polar(1.0, d.phase);
    term.frequency = -d.detuning;
    term.entries = raising_entries(dims, model.index_of(d.qubit), 0, 1.0);
    h.add_exchange(std::move(term));
  }
  return h;
}

ComplexMatrix build_h_effective_1q(double gp_ab, double eps, double phi) {
  const std::vector<int> dims = {3, 3};
  ComplexMatrix h = ComplexMatrix::Zero(9, 9);
  for (const auto& e : exchange_entries(dims, 0, 0, 1, 0, 1.0)) h(e.row, e.col) += gp_ab;
  const Complex drive = 0.5 * eps * std::polar(1.0, phi);
  for (const auto& e : raising_entries(dims, 1, 0, 1.0)) h(e.row, e.col) += drive;
  return h + h.adjoint().eval();
}

ComplexMatrix build_h_effective_2q(double gp_ab, double gp_bc, double varphi) {
  const std::vector<int> dims = {3, 3, 3};
  ComplexMatrix h = ComplexMatrix::Zero(27, 27);
  for (const auto& e : exchange_entries(dims, 0, 0, 1, 0, 1.0)) h(e.row, e.col) += gp_ab;
  const Complex bc = gp_bc * std::polar(1.0, varphi);
  for (const auto& e : exchange_entries(dims, 2, 0, 1, 0, 1.0)) h(e.row, e.col) += bc;
  return h + h.adjoint().eval();
}

}  // namespace nhqc
