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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nhqc/errors.hpp"
#include "nhqc/frame_builder.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

LatticeModel single() {
  return LatticeModel({{"A", Role::target, Frequency::from_mhz(375.0), Frequency::from_mhz(0.0), 3}}, {});
}

LatticeModel pair() { return subsystem(reference_lattice(), {"A", "B"}); }

TimeDependentHamiltonian driven_pair() {
  return build_h_interaction_2t(pair(), ModulationSpec{"A", 1.6 * mhz(245.0), mhz(245.0), 0.0},
                                DriveSpec{"B", mhz(11.26), 0.0, 0.0});
}

StateVector ket(int dim, std::initializer_list<std::pair<int, Complex>> amps) {
  StateVector v = StateVector::Zero(dim);
  for (auto [i, a] : amps) v(i) = a;
  return v.normalized();
}

TEST(Collapse, OperatorsAndRates) {
  const auto m = pair();
  const auto c = collapse_operators(m, NoiseSpec::uniform(2, khz(5.0)));
  ASSERT_EQ(c.size(), 4u);
  for (const auto& x : c) EXPECT_DOUBLE_EQ(x.rate, khz(5.0) / 2);
  const ComplexMatrix a_local = c[0].op;
  const auto dims = m.dims();
  ComplexMatrix relax = ComplexMatrix::Zero(3, 3);
  relax(0, 1) = 1.0;
  relax(1, 2) = 2.0;
  EXPECT_EQ(max_abs(a_local - embed(relax, dims, 0)), 0.0);
  const auto s = collapse_operators(m, NoiseSpec::uniform(2, khz(5.0), true));
  relax(1, 2) = std::sqrt(2.0);
  EXPECT_LE(max_abs(s[0].op - embed(relax, dims, 0)), 1e-15);
  EXPECT_THROW(collapse_operators(m, NoiseSpec::uniform(3, khz(5.0))), std::invalid_argument);
  EXPECT_THROW(collapse_operators(m, NoiseSpec::uniform(2, -1.0)), std::invalid_argument);
}

// Free decay of one transmon: populations and coherence have closed forms.
TEST(Propagate, AnalyticDecay) {
  const auto m = single();
  const TimeDependentHamiltonian h(3);
  const double kappa = khz(1000.0);
  const double t = 300e-9;
  for (bool sqrt2 : {false, true}) {
    const auto c = collapse_operators(m, NoiseSpec::uniform(1, kappa, sqrt2));
    const auto rho = propagate(h, c, DensityMatrix::pure(ket(3, {{2, 1.0}})), 0.0, t).matrix();
    const double w = sqrt2 ? 2.0 : 4.0;  // squared weight on |1><2|
    const double p2 = std::exp(-w * kappa * t);
    const double p1 = w / (w - 1) * (std::exp(-kappa * t) - p2);
    EXPECT_NEAR(rho(2, 2).real(), p2, 1e-10);
    EXPECT_NEAR(rho(1, 1).real(), p1, 1e-10);
    EXPECT_NEAR(rho(0, 0).real(), 1 - p1 - p2, 1e-10);
  }
  const auto c = collapse_operators(m, NoiseSpec::uniform(1, kappa));
  const auto rho = propagate(h, c, DensityMatrix::pure(ket(3, {{0, 1.0}, {1, 1.0}})), 0.0, t).matrix();
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.5 * std::exp(-kappa * t), 1e-10);
  EXPECT_NEAR(rho(1, 1).real(), 0.5 * std::exp(-kappa * t), 1e-10);
}

TEST(Propagate, DensityMatchesPureAtZeroNoise) {
  const auto h = driven_pair();
  const auto psi = ket(9, {{0, 1.0}, {3, Complex(0.3, 0.8)}});
  const auto rho = propagate(h, {}, DensityMatrix::pure(psi), 0.0, 30e-9).matrix();
  const auto out = propagate_unitary(h, psi, 0.0, 30e-9);
  EXPECT_LE(max_abs(rho - out * out.adjoint()), 1e-10);
  EXPECT_NEAR(out.norm(), 1.0, 1e-10);
}

TEST(Propagate, StepDoublingChangeIsSmall) {
  const auto h = driven_pair();
  const auto c = collapse_operators(pair(), NoiseSpec::uniform(2, khz(10.0)));
  const auto psi = ket(9, {{0, 1.0}, {3, 1.0}});
  StepControl fine;
  fine.subdivide = 2;
  const auto a = propagate(h, c, DensityMatrix::pure(psi), 0.0, 60e-9).matrix();
  const auto b = propagate(h, c, DensityMatrix::pure(psi), 0.0, 60e-9, fine).matrix();
  EXPECT_LE(max_abs(a - b), 1e-8);
  EXPECT_GE(steps_for(h, 60e-9, fine), 2 * steps_for(h, 60e-9, StepControl{}));
  EXPECT_LE(60e-9 / steps_for(h, 60e-9, StepControl{}), 20e-12 + 1e-24);
}

TEST(Propagate, SequenceEqualsChainedWindows) {
  const auto h = driven_pair();
  const auto c = collapse_operators(pair(), NoiseSpec::uniform(2, khz(10.0)));
  const PulseSequence seq{{h, 10e-9, 0.0}, {h, 15e-9, 10e-9}, {h, 5e-9, 0.0}};
  const auto rho0 = DensityMatrix::pure(ket(9, {{0, 1.0}, {3, 1.0}}));
  HygieneReport report;
  const auto direct = propagate(seq, c, rho0, StepControl{}, &report).matrix();
  auto chained = propagate(h, c, rho0, 0.0, 10e-9);
  chained = propagate(h, c, chained, 10e-9, 25e-9);
  chained = propagate(h, c, chained, 0.0, 5e-9);
  EXPECT_LE(max_abs(direct - chained.matrix()), 1e-13);
  EXPECT_LE(report.trace_drift, 1e-8);
  EXPECT_LE(report.hermiticity, 1e-10);
  EXPECT_GE(report.min_eigenvalue, -1e-7);
}

TEST(ProcessMap, MatchesDirectPropagation) {
  const auto h = driven_pair();
  const auto c = collapse_operators(pair(), NoiseSpec::uniform(2, khz(50.0)));
  const std::vector<StateVector> basis{ket(9, {{0, 1.0}}), ket(9, {{3, 1.0}})};
  const PulseSequence seq{{h, 40e-9, 0.0}};
  const auto map = process_matrix(seq, c, basis);
  std::mt19937 rng(5);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi = (Complex(d(rng), d(rng)) * basis[0] + Complex(d(rng), d(rng)) * basis[1]).normalized();
    const auto direct = propagate(seq, c, DensityMatrix::pure(psi)).matrix();
    EXPECT_LE(max_abs(map.apply_state(psi) - direct), 1e-10);
    EXPECT_LE(max_abs(map.apply(psi * psi.adjoint()) - direct), 1e-10);
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(max_abs(map.image(i, j) - map.image(j, i).adjoint()), 1e-15);
}

TEST(ProcessMap, PurePathMatchesColumns) {
  const auto h = driven_pair();
  const std::vector<StateVector> basis{ket(9, {{0, 1.0}}), ket(9, {{3, 1.0}})};
  const PulseSequence seq{{h, 25e-9, 0.0}, {h, 25e-9, 25e-9}};
  const auto map = process_matrix(seq, {}, basis);
  const auto cols = propagate_columns(seq, basis);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LE((cols.col(i) - propagate_unitary(seq, basis[i])).norm(), 1e-14);
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_LE(max_abs(map.image(i, j) - cols.col(i) * cols.col(j).adjoint()), 1e-12);
    }
  }
}

TEST(DensityMatrix, ValidationCatchesBreaches) {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityMatrix(rho).validate());
  rho(0, 0) = 1.1;
  EXPECT_THROW(DensityMatrix(rho).validate(), InvariantBreach);
  rho(0, 0) = 1.0;
  rho(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(rho).validate(), InvariantBreach);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  EXPECT_NEAR(DensityMatrix(neg).min_eigenvalue(), -0.2, 1e-14);
  EXPECT_THROW(DensityMatrix(neg).validate(), InvariantBreach);
}

}  // namespace
}  // namespace nhqc
