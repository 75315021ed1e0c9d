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

#include <stdexcept>
#include <string>

namespace nhqc {

// Bad matrix/operator dimension passed to an algebra routine.
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration text. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& field, const std::string& what)
      : std::runtime_error(format(line, field, what)), line_(line), field_(field) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "'" + field + "': ";
    return out + what;
  }

  int line_;
  std::string field_;
};

// A structurally valid model that breaks a lattice invariant
// (bipartite edges, unique labels, positive couplings, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No winding pair (m, n) within the search bound satisfies the segment
// timing congruences. Carries the closest angle that is solvable.
class UnsolvableDuration : public std::runtime_error {
 public:
  UnsolvableDuration(const std::string& what, double nearest_theta, double nearest_a)
      : std::runtime_error(what), nearest_theta_(nearest_theta), nearest_a_(nearest_a) {}

  double nearest_theta() const noexcept { return nearest_theta_; }
  double nearest_a() const noexcept { return nearest_a_; }

 private:
  double nearest_theta_;
  double nearest_a_;
};

// Numerical state left its admissible set (trace, hermiticity, positivity,
// norm) beyond tolerance, or the integrator could not take a step.
class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhqc
