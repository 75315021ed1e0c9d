# Copyright 2026 The nhqc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import nhqc


def test_bessel_matches_series():
    x = 1.3
    series = sum((-1) ** k / (math.factorial(k) * math.factorial(k + 1)) * (x / 2) ** (2 * k + 1) for k in range(30))
    assert nhqc.bessel_j(1, x) == pytest.approx(series, abs=1e-14)


def test_segment_duration():
    strict = nhqc.solve_segment_duration(2 * math.pi / 3, "G_z")
    assert strict["a"] == pytest.approx(6 * math.pi)
    flipped = nhqc.solve_segment_duration(2 * math.pi / 3, "G_z", allow_sign_flip=True)
    assert flipped["a"] == pytest.approx(2 * math.pi)
    assert flipped["sign_flipped"]
    with pytest.raises(nhqc.UnsolvableDuration) as err:
        nhqc.solve_segment_duration(1.0, "G_z", max_windings=0)
    assert hasattr(err.value, "nearest_theta")


def test_reference_lattice_text():
    text = nhqc.reference_lattice()
    assert text.count("[qubit.") == 5
    assert "[qubit.A]" in text


def test_run_scenario_effective():
    out = nhqc.run_scenario("fig2", mode="effective", kappa_khz=[0.0, 5.0], grid_1q=11)
    rows = out["rows"]
    assert [r["kappa_over_2pi_kHz"] for r in rows] == [0.0, 5.0]
    assert rows[0]["gate_fidelity"] == pytest.approx(1.0, abs=1e-9)
    assert out["csv"].startswith("# params: ")
    assert dict(out["params"])["mode"] == "effective"


def test_config_error():
    with pytest.raises(nhqc.ConfigError):
        nhqc.run_scenario("fig2", kappa_khz=[3.0, 1.0])
    with pytest.raises(ValueError):
        nhqc.run_scenario("fig9")
