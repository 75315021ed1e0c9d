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

"""Holonomic gate simulation on transmon lattices."""

from ._core import (
    ConfigError,
    InvariantBreach,
    UnsolvableDuration,
    ValidationError,
    bessel_j,
    reference_lattice,
    run_scenario,
    solve_segment_duration,
)

__all__ = [
    "ConfigError",
    "InvariantBreach",
    "UnsolvableDuration",
    "ValidationError",
    "bessel_j",
    "reference_lattice",
    "run_scenario",
    "solve_segment_duration",
]
