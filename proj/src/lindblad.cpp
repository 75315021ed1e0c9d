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

#include "nhqc/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nhqc/errors.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

constexpr long kCheckInterval = 1000;

struct Slot {
  int row;
  int col;
  Complex value;
};

struct Jump {
  double weight;  // 2 * rate
  std::vector<Slot> entries;
};

std::vector<Slot> sparse_entries(const ComplexMatrix& m) {
  std::vector<Slot> out;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != Complex(0.0)) out.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
    }
  }
  return out;
}

// rho -> -i H_eff rho + i rho H_eff^† + sum 2 rate A rho A^†, with
// H_eff = H - i sum rate A^†A. All products use column updates.
class Generator {
 public:
  Generator(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses) : h_(h), dim_(h.dim()) {
    ComplexMatrix k = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& c : collapses) {
      if (c.rate < 0.0) throw std::invalid_argument("collapse '" + c.label + "': negative rate");
      if (c.op.rows() != dim_ || c.op.cols() != dim_) {
        throw InvalidDimension("collapse '" + c.label + "': dimension does not match the Hamiltonian");
      }
      if (c.rate == 0.0) continue;
      jumps_.push_back({2.0 * c.rate, sparse_entries(c.op)});
      k += c.rate * (c.op.adjoint() * c.op);
    }
    for (const auto& e : sparse_entries(k)) extra_.push_back({e.row, e.col, -kI * e.value});
    values_.resize(h_.nnz());
  }

  bool dissipative() const { return !jumps_.empty(); }

  void rhs(double t, const ComplexMatrix& rho, ComplexMatrix& out) {
    h_.values(t, values_);
    const auto& rows = h_.rows();
    const auto& cols = h_.cols();

    // a = rho H_eff^†, b = rho^† H_eff^† = (H_eff rho)^†.
    adj_ = rho.adjoint();
    a_.setZero(dim_, dim_);
    b_.setZero(dim_, dim_);
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const Complex v = std::conj(values_[k]);
      a_.col(rows[k]).noalias() += v * rho.col(cols[k]);
      b_.col(rows[k]).noalias() += v * adj_.col(cols[k]);
    }
    for (const auto& e : extra_) {
      const Complex v = std::conj(e.value);
      a_.col(e.row).noalias() += v * rho.col(e.col);
      b_.col(e.row).noalias() += v * adj_.col(e.col);
    }
    out.noalias() = kI * a_;
    out.noalias() -= kI * b_.adjoint();

    for (const auto& j : jumps_) {
      m_.setZero(dim_, dim_);
      for (const auto& e : j.entries) m_.col(e.row).noalias() += std::conj(e.value) * rho.col(e.col);
      adj_ = m_.adjoint();
      m_.setZero(dim_, dim_);
      for (const auto& e : j.entries) m_.col(e.row).noalias() += std::conj(e.value) * adj_.col(e.col);
      out.noalias() += j.weight * m_.adjoint();
    }
  }

  void rhs(double t, const StateVector& psi, StateVector& out) {
    h_.values(t, values_);
    const auto& rows = h_.rows();
    const auto& cols = h_.cols();
    out.setZero(dim_);
    for (std::size_t k = 0; k < values_.size(); ++k) out(rows[k]) += values_[k] * psi(cols[k]);
    for (const auto& e : extra_) out(e.row) += e.value * psi(e.col);
    out *= -kI;
  }

 private:
  const TimeDependentHamiltonian& h_;
  Eigen::Index dim_;
  std::vector<Jump> jumps_;
  std::vector<Slot> extra_;
  std::vector<Complex> values_;
  ComplexMatrix adj_, a_, b_, m_;
};

template <typename State>
void rk4(Generator& gen, State& y, double t0, double duration, long steps, const auto& after_step) {
  const double dt = duration / static_cast<double>(steps);
  State k1, k2, k3, k4, tmp;
  k1 = k2 = k3 = k4 = State::Zero(y.rows(), y.cols());
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + dt * static_cast<double>(s);
    gen.rhs(t, y, k1);
    tmp = y + (0.5 * dt) * k1;
    gen.rhs(t + 0.5 * dt, tmp, k2);
    tmp = y + (0.5 * dt) * k2;
    gen.rhs(t + 0.5 * dt, tmp, k3);
    tmp = y + dt * k3;
    gen.rhs(t + dt, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    after_step(s + 1, t + dt);
  }
}

void breach(const std::string& what, double t, double value) {
  std::ostringstream msg;
  msg << what << " at t = " << to_ns(t) << " ns (value " << value << ")";
  throw InvariantBreach(msg.str());
}

void check_state(const ComplexMatrix& rho, double t, double trace0, HygieneReport* report) {
  HygieneReport r;
  r.trace_drift = std::abs(rho.trace() - trace0);
  r.hermiticity = max_abs(rho - rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (report != nullptr) report->merge(r);
  if (r.trace_drift > kTraceTol) breach("trace drift", t, r.trace_drift);
  if (r.hermiticity > kHermiticityTol) breach("hermiticity loss", t, r.hermiticity);
  if (r.min_eigenvalue < -kPositivityTol) breach("negative eigenvalue", t, r.min_eigenvalue);
}

// Evolves an operator (Hermitian or not) through [t0, t0 + duration].
void evolve(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses, ComplexMatrix& rho, double t0,
            double duration, const StepControl& step, bool hermitian, HygieneReport* report) {
  if (rho.rows() != h.dim() || rho.cols() != h.dim()) throw InvalidDimension("propagate: state dimension mismatch");
  if (!(duration > 0.0)) throw std::invalid_argument("propagate: t1 must exceed t0");
  Generator gen(h, collapses);
  const long steps = steps_for(h, duration, step);
  const Complex trace0 = rho.trace();
  rk4(gen, rho, t0, duration, steps, [&](long s, double t) {
    if (!hermitian) return;
    const bool check = s % kCheckInterval == 0 || s == steps;
    if (check) {
      if (report != nullptr) report->hermiticity = std::max(report->hermiticity, max_abs(rho - rho.adjoint()));
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (check) check_state(rho, t, trace0.real(), report);
  });
}

void evolve_pure(const TimeDependentHamiltonian& h, StateVector& psi, double t0, double duration,
                 const StepControl& step) {
  if (psi.size() != h.dim()) throw InvalidDimension("propagate_unitary: state dimension mismatch");
  if (!(duration > 0.0)) throw std::invalid_argument("propagate_unitary: t1 must exceed t0");
  Generator gen(h, {});
  const long steps = steps_for(h, duration, step);
  const double norm0 = psi.squaredNorm();
  rk4(gen, psi, t0, duration, steps, [&](long s, double t) {
    if (s % kCheckInterval == 0 || s == steps) {
      const double drift = std::abs(psi.squaredNorm() - norm0);
      if (drift > kTraceTol) breach("norm drift", t, drift);
    }
  });
}

bool any_dissipation(std::span<const Collapse> collapses) {
  for (const auto& c : collapses) {
    if (c.rate > 0.0) return true;
  }
  return false;
}

}  // namespace

// ---- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix rho, double time) : rho_(std::move(rho)), time_(time) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw InvalidDimension("DensityMatrix: must be square");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi, double time) {
  return DensityMatrix(psi * psi.adjoint(), time);
}

double DensityMatrix::trace_drift() const { return std::abs(rho_.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity() const { return max_abs(rho_ - rho_.adjoint()); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho_ + rho_.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

void DensityMatrix::validate(const std::string& context) const {
  if (trace_drift() > kTraceTol) throw InvariantBreach(context + ": trace differs from 1");
  if (hermiticity() > kHermiticityTol) throw InvariantBreach(context + ": not Hermitian");
  if (min_eigenvalue() < -kPositivityTol) throw InvariantBreach(context + ": negative eigenvalue");
}

void HygieneReport::merge(const HygieneReport& other) {
  trace_drift = std::max(trace_drift, other.trace_drift);
  hermiticity = std::max(hermiticity, other.hermiticity);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
}

void HygieneReport::observe(const DensityMatrix& rho) {
  merge(HygieneReport{rho.trace_drift(), rho.hermiticity(), rho.min_eigenvalue()});
}

// ---- noise -----------------------------------------------------------------

NoiseSpec NoiseSpec::uniform(std::size_t qubits, double kappa, bool sqrt2_relaxation) {
  NoiseSpec n;
  n.per_qubit.assign(qubits, TransmonNoise{kappa, kappa});
  n.sqrt2_relaxation = sqrt2_relaxation;
  return n;
}

std::vector<Collapse> collapse_operators(const LatticeModel& model, const NoiseSpec& noise) {
  const auto& qubits = model.qubits();
  if (noise.per_qubit.size() != qubits.size()) {
    throw std::invalid_argument("collapse_operators: one noise entry per transmon required");
  }
  const auto dims = model.dims();
  std::vector<Collapse> out;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int d = qubits[i].levels;
    const auto& rates = noise.per_qubit[i];
    if (rates.relaxation < 0.0 || rates.dephasing < 0.0) {
      throw std::invalid_argument("collapse_operators: rates must be non-negative");
    }
    ComplexMatrix lower = ComplexMatrix::Zero(d, d);
    ComplexMatrix number = ComplexMatrix::Zero(d, d);
    for (int j = 0; j + 1 < d; ++j) {
      lower(j, j + 1) = noise.sqrt2_relaxation ? std::sqrt(static_cast<double>(j + 1)) : static_cast<double>(j + 1);
      number(j + 1, j + 1) = static_cast<double>(j + 1);
    }
    const int site = static_cast<int>(i);
    out.push_back({0.5 * rates.relaxation, embed(lower, dims, site), "relaxation " + qubits[i].label});
    out.push_back({0.5 * rates.dephasing, embed(number, dims, site), "dephasing " + qubits[i].label});
  }
  return out;
}

// ---- propagation -----------------------------------------------------------

long steps_for(const TimeDependentHamiltonian& h, double duration, const StepControl& step) {
  if (!(step.max_step > 0.0) || !(step.points_per_period > 0.0) || step.subdivide < 1) {
    throw std::invalid_argument("StepControl: step parameters must be positive");
  }
  const double omega = std::max(h.max_frequency(), h.max_amplitude());
  double dt = step.max_step;
  if (omega > 0.0) dt = std::min(dt, kTwoPi / (step.points_per_period * omega));
  dt /= step.subdivide;
  const double n = std::ceil(duration / dt * (1.0 - 1e-12));
  if (!(n < 1e10)) throw InvariantBreach("propagate: step size underflow");
  return std::max(1L, static_cast<long>(n));
}

DensityMatrix propagate(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses,
                        const DensityMatrix& rho0, double t0, double t1, const StepControl& step,
                        HygieneReport* report) {
  ComplexMatrix rho = rho0.matrix();
  evolve(h, collapses, rho, t0, t1 - t0, step, true, report);
  return DensityMatrix(std::move(rho), rho0.time() + (t1 - t0));
}

DensityMatrix propagate(const PulseSequence& sequence, std::span<const Collapse> collapses,
                        const DensityMatrix& rho0, const StepControl& step, HygieneReport* report) {
  ComplexMatrix rho = rho0.matrix();
  double elapsed = 0.0;
  for (const auto& w : sequence) {
    evolve(w.h, collapses, rho, w.clock_offset, w.duration, step, true, report);
    elapsed += w.duration;
  }
  return DensityMatrix(std::move(rho), rho0.time() + elapsed);
}

StateVector propagate_unitary(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0, double t1,
                              const StepControl& step) {
  StateVector psi = psi0;
  evolve_pure(h, psi, t0, t1 - t0, step);
  return psi;
}

StateVector propagate_unitary(const PulseSequence& sequence, const StateVector& psi0, const StepControl& step) {
  StateVector psi = psi0;
  for (const auto& w : sequence) evolve_pure(w.h, psi, w.clock_offset, w.duration, step);
  return psi;
}

ComplexMatrix propagate_columns(const PulseSequence& sequence, std::span<const StateVector> basis,
                                const StepControl& step) {
  if (basis.empty()) throw std::invalid_argument("propagate_columns: empty basis");
  ComplexMatrix out(basis.front().size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(j) = propagate_unitary(sequence, basis[j], step);
  return out;
}

// ---- process map -----------------------------------------------------------

ProcessMap::ProcessMap(std::vector<StateVector> basis, std::vector<ComplexMatrix> images)
    : basis_(std::move(basis)), images_(std::move(images)) {
  if (images_.size() != basis_.size() * basis_.size()) {
    throw std::invalid_argument("ProcessMap: need one image per basis pair");
  }
}

ComplexMatrix ProcessMap::apply(const ComplexMatrix& rho_in) const {
  const std::size_t n = basis_.size();
  ComplexMatrix out = ComplexMatrix::Zero(images_.front().rows(), images_.front().cols());
  for (std::size_t i = 0; i < n; ++i) {
    const StateVector left = rho_in.adjoint() * basis_[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = left.dot(basis_[j]);  // <b_i|rho|b_j>
      if (c != Complex(0.0)) out += c * image(i, j);
    }
  }
  return out;
}

ComplexMatrix ProcessMap::apply_state(const StateVector& psi) const {
  const std::size_t n = basis_.size();
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = basis_[i].dot(psi);
  ComplexMatrix out = ComplexMatrix::Zero(images_.front().rows(), images_.front().cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == Complex(0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (c[j] != Complex(0.0)) out += (c[i] * std::conj(c[j])) * image(i, j);
    }
  }
  return out;
}

ProcessMap process_matrix(const PulseSequence& sequence, std::span<const Collapse> collapses,
                          std::span<const StateVector> basis, const StepControl& step, HygieneReport* report) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("process_matrix: empty basis");
  std::vector<ComplexMatrix> images(n * n);
  if (!any_dissipation(collapses)) {
    std::vector<StateVector> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = propagate_unitary(sequence, basis[i], step);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) images[i * n + j] = out[i] * out[j].adjoint();
    }
    return ProcessMap({basis.begin(), basis.end()}, std::move(images));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      ComplexMatrix rho = basis[i] * basis[j].adjoint();
      for (const auto& w : sequence) evolve(w.h, collapses, rho, w.clock_offset, w.duration, step, i == j, report);
      images[i * n + j] = rho;
      if (i != j) images[j * n + i] = rho.adjoint();
    }
  }
  return ProcessMap({basis.begin(), basis.end()}, std::move(images));
}

ProcessMap process_matrix(const TimeDependentHamiltonian& h, std::span<const Collapse> collapses,
                          std::span<const StateVector> basis, double t0, double t1, const StepControl& step,
                          HygieneReport* report) {
  PulseSequence seq{PulseWindow{h, t1 - t0, t0}};
  return process_matrix(seq, collapses, basis, step, report);
}

}  // namespace nhqc
