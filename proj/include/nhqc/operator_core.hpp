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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nhqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Tolerances shared across the library.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kExpTol = 1e-10;
inline constexpr double kIntegratorTol = 1e-6;

/// Lowering operator of a d-level oscillator, <j|a|j+1> = sqrt(j+1).
/// Throws InvalidDimension for d < 2.
ComplexMatrix ladder(int d);

/// Tensor product. Basis index of |m>⊗|n> is m*cols(B)+n (row-major order).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Places `op` on factor `site` of a tensor product with local dimensions `dims`.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> dims, int site);

/// Row-major flat index of a multi-level basis state.
int basis_index(std::span<const int> dims, std::span<const int> levels);

StateVector basis_state(std::span<const int> dims, std::span<const int> levels);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_unitary(const ComplexMatrix& m, double tol = kAlgebraTol);

/// min over global phase of ||a - e^{i phi} b||_F.
double phase_insensitive_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// |Tr(a^† b)|^2 / d^2. Equals 1 iff a and b agree up to global phase (for unitaries).
double operator_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Closed-form factorisations of the single- and two-qubit coupling blocks.
// ---------------------------------------------------------------------------

/// Left factor, diagonal singular values and right-adjoint factor.
struct SvdFactors {
  ComplexMatrix left;
  ComplexMatrix singular;
  ComplexMatrix right_adjoint;

  ComplexMatrix product() const { return left * singular * right_adjoint; }
  ComplexMatrix right() const { return right_adjoint.adjoint(); }
};

/// Off-diagonal block of the single-qubit effective Hamiltonian (units of Omega)
/// between {|00>,|10>} and {|01>,|11>}.
ComplexMatrix coupling_block_f(double theta, double phi);

/// F = W Q R^†, Q = diag{cos^2(theta/4), sin^2(theta/4)}.
SvdFactors svd_f(double theta, double phi);

/// Two-qubit coupling block on {|00>,|01>,|10>,|11>}_AC (units of g).
ComplexMatrix coupling_block_k(double vartheta, double varphi);

/// K = X Y Z^†, Y = diag{0,0,1,1}.
SvdFactors svd_k(double vartheta, double varphi);

/// exp(-i H t) for Hermitian H via its spectral decomposition.
/// Throws std::invalid_argument when H is not Hermitian to 1e-12.
ComplexMatrix matrix_exp(const ComplexMatrix& h, double t);

}  // namespace nhqc
