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
#include <vector>

#include "nhqc/device_model.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/operator_core.hpp"

namespace nhqc {

/// <psi|rho|psi>. Throws InvalidDimension on mismatch.
double state_fidelity(const ComplexMatrix& rho, const StateVector& psi);

/// Projector onto targets in {0,1} and auxiliaries in |0>.
ComplexMatrix computational_projector(const LatticeModel& model);

/// 1 - Tr(P rho P).
double leakage(const ComplexMatrix& rho, const ComplexMatrix& p);

/// theta_k = 2 pi k / (n - 1), k = 0..n-1 (both endpoints).
std::vector<double> grid_1q(int n);
/// theta_k = 2 pi k / n, k = 0..n-1.
std::vector<double> grid_2q(int n);

/// Pairwise (cascade) summation; result independent of thread scheduling.
double pairwise_sum(std::span<const double> values);
double pairwise_mean(std::span<const double> values);

/// Fidelity of a channel against an ideal map between two bases:
///   F(c) = <f|Phi(|c><c|)|f>,  |c> = sum c_i b_i,  |f> = sum (V c)_k o_k.
class FidelityKernel {
 public:
  FidelityKernel(const ProcessMap& map, std::span<const StateVector> outputs, const ComplexMatrix& ideal);

  double operator()(std::span<const Complex> c) const;

  std::size_t inputs() const { return n_in_; }

 private:
  std::size_t n_in_;
  std::size_t n_out_;
  ComplexMatrix ideal_;
  std::vector<Complex> t_;  // <o_k|Phi(b_i b_j^†)|o_l>, index ((k*n_out + l)*n_in + i)*n_in + j
};

/// Mean over cos(t)|b0> + sin(t)|b1>, t on grid_1q(n).
double gate_fidelity_1q(const FidelityKernel& kernel, int n = 1001);

/// Mean over (cos t1, sin t1) ⊗ (cos t2, sin t2) on grid_2q(n) x grid_2q(n).
double gate_fidelity_2q(const FidelityKernel& kernel, int n = 100);

/// Mean of <psi_k|rho_k|psi_k> from individually propagated states.
double gate_fidelity_from_states(std::span<const ComplexMatrix> finals, std::span<const StateVector> ideals);

struct FidelityPoint {
  double kappa = 0.0;  // rad/s
  double state_fidelity = 0.0;
  double gate_fidelity = 0.0;
  double leakage = 0.0;
};

struct FidelityCurve {
  std::string variable = "kappa";
  std::vector<FidelityPoint> points;

  /// Fidelities in [0, 1 + 1e-9], leakage in [-1e-9, 1], kappa >= 0 ascending.
  /// Throws InvariantBreach otherwise.
  void validate() const;
};

}  // namespace nhqc
