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

// Sectioned `key = value` text used for device and gate-recipe files.
//
//   # comment
//   [qubit.A]
//   role = target
//   anharmonicity_MHz = 375
//
// Section names may repeat (e.g. several [coupling] blocks); order is kept.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nhqc::config {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(std::string_view key) const;
  // Throws ConfigError naming the section when the key is absent.
  const Entry& require(std::string_view key) const;

  std::string get_string(std::string_view key) const;
  std::optional<std::string> get_optional(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::optional<double> get_optional_double(std::string_view key) const;
  int get_int(std::string_view key) const;
  bool get_bool(std::string_view key) const;
};

std::vector<Section> parse(std::string_view text);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

double parse_double(const Entry& entry);
int parse_int(const Entry& entry);

std::vector<std::string> split_list(std::string_view value, char sep = ',');

}  // namespace nhqc::config
