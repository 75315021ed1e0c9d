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

#include "nhqc/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nhqc/errors.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

constexpr double kFidelitySlack = 1e-9;

double cascade(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const auto half = v.size() / 2;
  return cascade(v.first(half)) + cascade(v.subspan(half));
}

}  // namespace

double state_fidelity(const ComplexMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw InvalidDimension("state_fidelity: dimension mismatch");
  }
  return psi.dot(rho * psi).real();
}

ComplexMatrix computational_projector(const LatticeModel& model) {
  const auto dims = model.dims();
  const auto& qubits = model.qubits();
  const auto n = static_cast<Eigen::Index>(hilbert_dim(model));
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index rest = i;
    bool inside = true;
    for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
      const auto level = rest % dims[s];
      rest /= dims[s];
      const int top = qubits[s].role == Role::target ? 1 : 0;
      inside = inside && level <= top;
    }
    if (inside) p(i, i) = 1.0;
  }
  return p;
}

double leakage(const ComplexMatrix& rho, const ComplexMatrix& p) {
  if (rho.rows() != p.rows() || rho.cols() != p.cols()) throw InvalidDimension("leakage: dimension mismatch");
  return 1.0 - (p * rho * p).trace().real();
}

std::vector<double> grid_1q(int n) {
  if (n < 2) throw std::invalid_argument("grid_1q: need at least 2 points");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = kTwoPi * k / (n - 1);
  return out;
}

std::vector<double> grid_2q(int n) {
  if (n < 1) throw std::invalid_argument("grid_2q: need at least 1 point");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = kTwoPi * k / n;
  return out;
}

double pairwise_sum(std::span<const double> values) { return cascade(values); }

double pairwise_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("pairwise_mean: empty input");
  return cascade(values) / static_cast<double>(values.size());
}

FidelityKernel::FidelityKernel(const ProcessMap& map, std::span<const StateVector> outputs, const ComplexMatrix& ideal)
    : n_in_(map.basis().size()), n_out_(outputs.size()), ideal_(ideal) {
  if (ideal.rows() != static_cast<Eigen::Index>(n_out_) || ideal.cols() != static_cast<Eigen::Index>(n_in_)) {
    throw InvalidDimension("FidelityKernel: ideal must map input to output coefficients");
  }
  t_.resize(n_out_ * n_out_ * n_in_ * n_in_);
  for (std::size_t i = 0; i < n_in_; ++i) {
    for (std::size_t j = 0; j < n_in_; ++j) {
      const ComplexMatrix& img = map.image(i, j);
      for (std::size_t k = 0; k < n_out_; ++k) {
        const StateVector left = img.adjoint() * outputs[k];
        for (std::size_t l = 0; l < n_out_; ++l) {
          t_[((k * n_out_ + l) * n_in_ + i) * n_in_ + j] = left.dot(outputs[l]);
        }
      }
    }
  }
}

double FidelityKernel::operator()(std::span<const Complex> c) const {
  if (c.size() != n_in_) throw InvalidDimension("FidelityKernel: wrong coefficient count");
  Eigen::VectorXcd cin(n_in_);
  for (std::size_t i = 0; i < n_in_; ++i) cin(i) = c[i];
  const Eigen::VectorXcd f = ideal_ * cin;
  Complex acc = 0.0;
  for (std::size_t k = 0; k < n_out_; ++k) {
    for (std::size_t l = 0; l < n_out_; ++l) {
      const Complex w = std::conj(f(k)) * f(l);
      if (w == Complex(0.0)) continue;
      const Complex* row = &t_[((k * n_out_ + l) * n_in_) * n_in_];
      Complex inner = 0.0;
      for (std::size_t i = 0; i < n_in_; ++i) {
        for (std::size_t j = 0; j < n_in_; ++j) inner += c[i] * std::conj(c[j]) * row[i * n_in_ + j];
      }
      acc += w * inner;
    }
  }
  return acc.real();
}

double gate_fidelity_1q(const FidelityKernel& kernel, int n) {
  if (kernel.inputs() != 2) throw InvalidDimension("gate_fidelity_1q: kernel must have two inputs");
  const auto grid = grid_1q(n);
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex c[2] = {std::cos(grid[k]), std::sin(grid[k])};
    f[k] = kernel(c);
  }
  return pairwise_mean(f);
}

double gate_fidelity_2q(const FidelityKernel& kernel, int n) {
  if (kernel.inputs() != 4) throw InvalidDimension("gate_fidelity_2q: kernel must have four inputs");
  const auto grid = grid_2q(n);
  std::vector<double> f;
  f.reserve(grid.size() * grid.size());
  for (double t1 : grid) {
    for (double t2 : grid) {
      const double a0 = std::cos(t1), a1 = std::sin(t1), c0 = std::cos(t2), c1 = std::sin(t2);
      const Complex c[4] = {a0 * c0, a0 * c1, a1 * c0, a1 * c1};
      f.push_back(kernel(c));
    }
  }
  return pairwise_mean(f);
}

double gate_fidelity_from_states(std::span<const ComplexMatrix> finals, std::span<const StateVector> ideals) {
  if (finals.size() != ideals.size()) throw InvalidDimension("gate_fidelity_from_states: size mismatch");
  std::vector<double> f(finals.size());
  for (std::size_t k = 0; k < finals.size(); ++k) f[k] = state_fidelity(finals[k], ideals[k]);
  return pairwise_mean(f);
}

void FidelityCurve::validate() const {
  double previous = -1.0;
  for (const auto& p : points) {
    std::ostringstream where;
    where << variable << " = " << to_khz(p.kappa) << " kHz: ";
    if (!(p.kappa >= 0.0) || p.kappa <= previous) throw InvariantBreach(where.str() + "sweep not ascending");
    for (double f : {p.state_fidelity, p.gate_fidelity}) {
      if (!(f >= 0.0 && f <= 1.0 + kFidelitySlack)) throw InvariantBreach(where.str() + "fidelity out of [0, 1]");
    }
    if (!(p.leakage >= -kFidelitySlack && p.leakage <= 1.0)) throw InvariantBreach(where.str() + "leakage out of range");
    previous = p.kappa;
  }
}

}  // namespace nhqc
