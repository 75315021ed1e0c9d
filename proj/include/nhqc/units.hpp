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

#include <numbers>

namespace nhqc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Ordinary frequency -> angular frequency (rad/s).
constexpr double mhz(double f) { return kTwoPi * f * 1e6; }
constexpr double khz(double f) { return kTwoPi * f * 1e3; }

constexpr double to_mhz(double omega) { return omega / (kTwoPi * 1e6); }
constexpr double to_khz(double omega) { return omega / (kTwoPi * 1e3); }

constexpr double ns(double t) { return t * 1e-9; }
constexpr double to_ns(double t) { return t * 1e9; }

}  // namespace nhqc
