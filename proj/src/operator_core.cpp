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

#include "nhqc/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nhqc/errors.hpp"

namespace nhqc {

ComplexMatrix ladder(int d) {
  if (d < 2) {
    throw InvalidDimension("ladder: dimension must be >= 2, got " + std::to_string(d));
  }
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int j = 0; j + 1 < d; ++j) {
    a(j, j + 1) = std::sqrt(static_cast<double>(j + 1));
  }
  return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> dims, int site) {
  if (site < 0 || site >= static_cast<int>(dims.size())) {
    throw InvalidDimension("embed: site out of range");
  }
  if (op.rows() != dims[site] || op.cols() != dims[site]) {
    throw InvalidDimension("embed: operator does not match local dimension");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    out = kron(out, k == site ? op : ComplexMatrix::Identity(dims[k], dims[k]));
  }
  return out;
}

int basis_index(std::span<const int> dims, std::span<const int> levels) {
  if (dims.size() != levels.size()) throw InvalidDimension("basis_index: arity mismatch");
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (levels[k] < 0 || levels[k] >= dims[k]) throw InvalidDimension("basis_index: level out of range");
    index = index * dims[k] + levels[k];
  }
  return index;
}

StateVector basis_state(std::span<const int> dims, std::span<const int> levels) {
  int total = 1;
  for (int d : dims) total *= d;
  StateVector v = StateVector::Zero(total);
  v(basis_index(dims, levels)) = 1.0;
  return v;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

double phase_insensitive_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (a - phase * b).norm();
}

double operator_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidDimension("operator_fidelity: shape mismatch");
  }
  const double d = static_cast<double>(a.rows());
  return std::norm((a.adjoint() * b).trace()) / (d * d);
}

ComplexMatrix coupling_block_f(double theta, double phi) {
  const double s = 0.5 * std::sin(theta / 2);
  const Complex e = std::polar(1.0, -phi);
  ComplexMatrix f(2, 2);
  f << s * e, 0.0,
       std::cos(theta / 2), s * e;
  return f;
}

SvdFactors svd_f(double theta, double phi) {
  const double c = std::cos(theta / 4);
  const double s = std::sin(theta / 4);
  const Complex ep = std::polar(1.0, phi);
  const Complex em = std::conj(ep);

  SvdFactors out;
  out.left.resize(2, 2);
  out.left << s, c * em,
              c * ep, -s;
  out.singular = ComplexMatrix::Zero(2, 2);
  out.singular(0, 0) = c * c;
  out.singular(1, 1) = s * s;
  // Phase chosen so that W Q R^† = F exactly.
  out.right_adjoint.resize(2, 2);
  out.right_adjoint << c * em, s * em * em,
                       s, -c * em;
  return out;
}

ComplexMatrix coupling_block_k(double vartheta, double varphi) {
  const double c = std::cos(vartheta / 2);
  const Complex se = std::sin(vartheta / 2) * std::polar(1.0, varphi);
  ComplexMatrix k = ComplexMatrix::Zero(4, 4);
  k(1, 0) = se;
  k(2, 0) = c;
  k(3, 1) = c;
  k(3, 2) = se;
  return k;
}

SvdFactors svd_k(double vartheta, double varphi) {
  const double c = std::cos(vartheta / 2);
  const double s = std::sin(vartheta / 2);
  const Complex ep = std::polar(1.0, varphi);
  const Complex em = std::conj(ep);

  SvdFactors out;
  out.left = ComplexMatrix::Zero(4, 4);
  out.left(0, 0) = 1.0;
  out.left(1, 1) = c;
  out.left(1, 3) = s * ep;
  out.left(2, 1) = -s * em;
  out.left(2, 3) = c;
  out.left(3, 2) = 1.0;

  out.singular = ComplexMatrix::Zero(4, 4);
  out.singular(2, 2) = 1.0;
  out.singular(3, 3) = 1.0;

  out.right_adjoint = ComplexMatrix::Zero(4, 4);
  out.right_adjoint(0, 3) = 1.0;
  out.right_adjoint(1, 1) = s * em;
  out.right_adjoint(1, 2) = -c;
  out.right_adjoint(2, 1) = c;
  out.right_adjoint(2, 2) = s * ep;
  out.right_adjoint(3, 0) = 1.0;
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("matrix_exp: Hamiltonian is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("matrix_exp: eigendecomposition failed");
  }
  const auto& v = eig.eigenvectors();
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -eig.eigenvalues()(k) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace nhqc
