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
#include <optional>

#include "nhqc/config_text.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/holonomy.hpp"
#include "nhqc/units.hpp"

namespace nhqc {
namespace {

LatticeModel pair() { return subsystem(reference_lattice(), {"A", "B"}); }
LatticeModel chain() { return subsystem(reference_lattice(), {"A", "B", "C"}); }

double wrap(double x) {
  const double r = std::fmod(x, kTwoPi);
  return r < 0 ? r + kTwoPi : r;
}

bool congruent(double x, double target) {
  const double d = std::abs(wrap(x) - wrap(target));
  return std::min(d, kTwoPi - d) < 1e-9;
}

// Smallest a > 0 with a cos^2(theta/4) = p and a sin^2(theta/4) = q (mod 2 pi),
// enumerating the first congruence's windings.
std::optional<double> brute_force(double theta, double p, double q, int windings) {
  const double c2 = std::pow(std::cos(theta / 4), 2), s2 = std::pow(std::sin(theta / 4), 2);
  std::optional<double> best;
  for (int m = 0; m <= windings; ++m) {
    const double a = (p + kTwoPi * m) / c2;
    const double second = a * s2;
    const double n = (second - q) / kTwoPi;
    if (congruent(second, q) && n > -1e-9 && n < windings + 1e-9 && (!best || a < *best)) best = a;
  }
  return best;
}

double oracle(double theta, Branch branch, bool flip, int windings = 10) {
  const double q = branch == Branch::G_I ? kPi / 2 : 3 * kPi / 2;
  std::optional<double> best = brute_force(theta, kPi / 2, q, windings);
  if (flip) {
    const auto alt = brute_force(theta, 3 * kPi / 2, branch == Branch::G_I ? 3 * kPi / 2 : kPi / 2, windings);
    if (alt && (!best || *alt < *best)) best = alt;
  }
  return best.value_or(-1.0);
}

TEST(SegmentDuration, TwoThirdsPiOnGz) {
  const auto s = solve_segment_duration(2 * kPi / 3, Branch::G_z);
  EXPECT_NEAR(s.a, 6 * kPi, 1e-12);
  EXPECT_EQ(s.m, 2);
  EXPECT_EQ(s.n, 0);
  EXPECT_FALSE(s.sign_flipped);
  EXPECT_NEAR(oracle(2 * kPi / 3, Branch::G_z, false), 6 * kPi, 1e-9);
  EXPECT_NEAR(solve_segment_duration(2 * kPi / 3, Branch::G_z, 10), 6 * kPi, 1e-12);
  EXPECT_LE(congruence_residual(s.a, 2 * kPi / 3, Branch::G_z), 1e-12);
}

TEST(SegmentDuration, SignFlipShortensTwoThirdsPi) {
  const auto s = solve_segment_duration(2 * kPi / 3, Branch::G_z, SynthesisOptions{10, true});
  EXPECT_NEAR(s.a, kTwoPi, 1e-12);
  EXPECT_TRUE(s.sign_flipped);
  EXPECT_NEAR(oracle(2 * kPi / 3, Branch::G_z, true), kTwoPi, 1e-9);
  EXPECT_LE(congruence_residual(s.a, 2 * kPi / 3, Branch::G_z, true), 1e-12);
}

TEST(SegmentDuration, AgreesWithBruteForceOnSolvableAngles) {
  for (Branch branch : {Branch::G_I, Branch::G_z}) {
    for (bool flip : {false, true}) {
      const double p = kPi / 2, q = branch == Branch::G_I ? kPi / 2 : 3 * kPi / 2;
      for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
          const double a = p + q + kTwoPi * (m + n);
          const double ratio = (p - q + kTwoPi * (m - n)) / a;
          const double theta = 2 * std::acos(ratio);
          if (std::abs(std::sin(theta / 2)) < 1e-6) continue;
          const auto s = solve_segment_duration(theta, branch, SynthesisOptions{10, flip});
          EXPECT_NEAR(s.a, oracle(theta, branch, flip), 1e-8) << m << " " << n;
        }
      }
    }
  }
}

TEST(SegmentDuration, UnsolvableCarriesSolvableNeighbour) {
  const double theta = 2.0941888193507765;
  try {
    solve_segment_duration(theta, Branch::G_z, SynthesisOptions{10, true});
    FAIL() << "expected UnsolvableDuration";
  } catch (const UnsolvableDuration& e) {
    EXPECT_NEAR(e.nearest_theta(), 2 * kPi / 3, 1e-12);
    EXPECT_NEAR(e.nearest_a(), kTwoPi, 1e-12);
    EXPECT_NO_THROW(solve_segment_duration(e.nearest_theta(), Branch::G_z, SynthesisOptions{10, true}));
  }
  EXPECT_EQ(oracle(theta, Branch::G_z, true), -1.0);
  EXPECT_THROW(solve_segment_duration(0.0, Branch::G_I), std::invalid_argument);
  EXPECT_THROW(solve_segment_duration(4 * kPi, Branch::G_I), std::invalid_argument);
  EXPECT_THROW(solve_segment_duration(kPi, Branch::G_I, SynthesisOptions{-1, false}), std::invalid_argument);
}

TEST(Controls, PinnedSingleQubitValues) {
  const auto m = pair();
  const SingleQubitControl c{"A", "B", 1.6, 0.0, mhz(11.26)};
  EXPECT_NEAR(effective_exchange(m, c) / mhz(1.0), 11.41 * bessel_j(1, 1.6), 1e-9);
  EXPECT_NEAR(rabi_frequency(m, c) / mhz(1.0), 13.0, 0.01);
  EXPECT_NEAR(mixing_angle(m, c), 2.0941888193507765, 1e-9);
  const auto r = retune_drive(m, c, 2 * kPi / 3);
  EXPECT_NEAR(mixing_angle(m, r), 2 * kPi / 3, 1e-12);
  EXPECT_NEAR(r.drive_amplitude / mhz(1.0), 11.262682237011445, 1e-9);
  const auto cal = calibrate_single_qubit(m, "A", "B", kPi / 2, mhz(8.0));
  EXPECT_NEAR(mixing_angle(m, cal), kPi / 2, 1e-12);
  EXPECT_NEAR(rabi_frequency(m, cal), mhz(8.0), 1e-3);
  // g' above g max J1 is out of reach.
  EXPECT_THROW(calibrate_single_qubit(m, "A", "B", kPi / 2, mhz(13.0)), std::domain_error);
}

// Effective propagation of every recipe reproduces its closed-form gate.
TEST(Recipes, PhaseGateMatchesClosedForm) {
  const auto m = pair();
  const SingleQubitControl c = retune_drive(m, {"A", "B", 1.6, 0.0, mhz(11.26)}, 2 * kPi / 3);
  for (bool flip : {false, true}) {
    for (double gamma : {kPi / 8, 0.3, -1.1, kPi / 2}) {
      const auto r = make_rot_z(gamma, m, c, SynthesisOptions{10, flip});
      const auto basis = gate_basis(m, r);
      EXPECT_LE(phase_insensitive_distance(restrict_to(effective_propagator(m, r), basis), rot_z_matrix(gamma)), 1e-8);
      EXPECT_NEAR(r.a, flip ? kTwoPi : 6 * kPi, 1e-12);
      EXPECT_EQ(r.segments.size(), 2u);
      EXPECT_NEAR(r.segments[1].clock_offset, r.segments[0].duration, 1e-21);
    }
  }
  EXPECT_NEAR(to_ns(make_rot_z(kPi / 8, m, c).total_duration()), 461.3, 0.5);
  EXPECT_THROW(make_rot_z(kPi / 8, m, SingleQubitControl{"A", "B", 1.6, 0.0, mhz(11.26)}), UnsolvableDuration);
}

TEST(Recipes, RotationMatchesClosedForm) {
  const auto m = pair();
  for (double theta : {kPi, 2 * std::acos(2.0 / 3.0), 2 * std::acos(-2.0 / 7.0)}) {
    const auto c = calibrate_single_qubit(m, "A", "B", theta, mhz(8.0));
    const auto r = make_rot_y(theta, m, c);
    const auto u = restrict_to(effective_propagator(m, r), gate_basis(m, r));
    EXPECT_LE(phase_insensitive_distance(u, rot_y_matrix(theta)), 1e-8) << theta;
    EXPECT_EQ(r.branch, Branch::G_I);
  }
  const auto c = calibrate_single_qubit(m, "A", "B", kPi, mhz(8.0));
  EXPECT_THROW(make_rot_y(kPi / 2, m, c), std::invalid_argument);
}

TEST(Recipes, TwoQubitMatchesClosedFormAndDuration) {
  const auto m = chain();
  const TwoQubitControl pinned{"A", "B", "C", 1.6, 1.6, 0.0};
  const auto r = make_two_qubit(two_qubit_angle(m, pinned), kPi, m, pinned);
  EXPECT_NEAR(r.vartheta, kPi / 2, 1e-12);
  const double g = two_qubit_rate(m, pinned);
  EXPECT_NEAR(g / mhz(1.0), std::sqrt(2.0) * 11.41 * bessel_j(1, 1.6), 1e-9);
  EXPECT_NEAR(r.total_duration(), kPi / g, 1e-18);
  ComplexMatrix vs = ComplexMatrix::Zero(4, 4);
  vs(0, 0) = 1.0;
  vs(1, 2) = 1.0;
  vs(2, 1) = 1.0;
  vs(3, 3) = -1.0;
  const auto u = restrict_to(effective_propagator(m, r), gate_basis(m, r));
  EXPECT_LE(phase_insensitive_distance(u, vs), 1e-8);
  EXPECT_LE(phase_insensitive_distance(two_qubit_matrix(kPi / 2, kPi), vs), 1e-15);
  for (double vt : {kPi / 3, 1.1, 2.5}) {
    for (double vp : {0.0, 0.7, -2.0}) {
      const auto c = calibrate_two_qubit(m, "A", "B", "C", vt, mhz(6.0));
      const auto rr = make_two_qubit(vt, vp, m, c);
      const auto uu = restrict_to(effective_propagator(m, rr), gate_basis(m, rr));
      EXPECT_LE(phase_insensitive_distance(uu, two_qubit_matrix(vt, vp)), 1e-8) << vt << " " << vp;
    }
  }
}

TEST(Holonomy, ParallelTransportAndCyclicityInEffectiveModel) {
  const auto m = pair();
  const auto c = retune_drive(m, {"A", "B", 1.6, 0.0, mhz(11.26)}, 2 * kPi / 3);
  const auto r = make_rot_z(kPi / 8, m, c, SynthesisOptions{10, true});
  const auto basis = gate_basis(m, r);
  const ComplexMatrix p = projector(basis);
  ComplexMatrix u = ComplexMatrix::Identity(9, 9);
  double worst = 0.0;
  for (const auto& seg : r.segments) {
    const ComplexMatrix h = effective_segment_hamiltonian(m, seg);
    EXPECT_EQ(max_abs(p * h * p), 0.0);
    std::vector<PropagatorSample> samples;
    for (int k = 0; k <= 16; ++k) samples.push_back({0.0, matrix_exp(h, seg.duration * k / 16) * u});
    worst = std::max(worst, check_parallel_transport([&](double) { return h; }, p, samples));
    EXPECT_EQ(check_parallel_transport([&](double) { return h; }, p, {}), 0.0);
    u = matrix_exp(h, seg.duration) * u;
  }
  EXPECT_LE(worst, 1e-6 * r.rate);
  EXPECT_NEAR(check_cyclic(u, basis), 1.0, 1e-10);
}

TEST(Holonomy, DetunedDriveIsRejected) {
  const auto m = pair();
  SegmentSchedule seg;
  seg.duration = 1e-9;
  seg.drive = DriveSpec{"B", mhz(5.0), mhz(1.0), 0.0};
  EXPECT_THROW(effective_segment_hamiltonian(m, seg), std::invalid_argument);
}

TEST(TextForm, SerializeReplayRoundTrip) {
  const auto m = reference_lattice();
  const auto c = retune_drive(m, {"A", "B", 1.6, 0.0, mhz(11.26)}, 2 * kPi / 3);
  const std::vector<GateRecipe> recipes{make_rot_z(kPi / 8, m, c, SynthesisOptions{10, true}),
                                        make_two_qubit(kPi / 2, kPi, m, {"A", "B", "E", 1.6, 1.6, 0.0})};
  for (const auto& r : recipes) {
    const auto text = serialize(r);
    const auto back = load_recipes(m, text);
    ASSERT_EQ(back.size(), 1u);
    ASSERT_EQ(back[0].segments.size(), r.segments.size());
    for (std::size_t k = 0; k < r.segments.size(); ++k) {
      const auto& x = back[0].segments[k];
      const auto& y = r.segments[k];
      // Durations pass through nanoseconds; allow one rounding.
      EXPECT_NEAR(x.duration, y.duration, 1e-15 * y.duration);
      EXPECT_NEAR(x.clock_offset, y.clock_offset, 1e-15 * y.duration);
      EXPECT_EQ(x.drive, y.drive);
      EXPECT_EQ(x.modulations, y.modulations);
    }
    EXPECT_EQ(back[0].targets, r.targets);
    EXPECT_EQ(back[0].kind, r.kind);
    EXPECT_LE(max_abs(back[0].ideal_unitary - r.ideal_unitary), 1e-15);
  }
}

TEST(TextForm, SynthesizeFromControls) {
  const auto m = reference_lattice();
  const std::string base =
      "[gate]\nkind = rot_z\ngamma = pi/8\ntarget = A\nauxiliary = B\nmodulation_index = 1.6\ndrive_MHz = 11.26\n";
  EXPECT_THROW(load_recipes(m, base, SynthesisOptions{10, true}), UnsolvableDuration);
  const auto r = load_recipes(m, base + "retune = true\n", SynthesisOptions{10, true});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].gamma, kPi / 8, 1e-15);
  EXPECT_NEAR(r[0].theta, 2 * kPi / 3, 1e-12);
  EXPECT_THROW(load_recipes(m, base + "colour = red\n"), ConfigError);
  const auto two = load_recipes(m, "[gate]\nkind = two_qubit\nvartheta = pi/2\nvarphi = 3*pi/4\ntargets = A, C\n"
                                   "auxiliary = B\nrate_MHz = 9\n");
  EXPECT_NEAR(two[0].varphi, 3 * kPi / 4, 1e-15);
  EXPECT_NEAR(two[0].rate, mhz(9.0), 1e-6);
  EXPECT_THROW(load_recipes(m, "[gate]\nkind = swap\n"), ConfigError);
}

}  // namespace
}  // namespace nhqc
