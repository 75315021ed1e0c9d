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

#include "nhqc/config_text.hpp"

#include <charconv>
#include <cmath>

#include "nhqc/errors.hpp"

namespace nhqc::config {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

const Entry* Section::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const Entry& Section::require(std::string_view key) const {
  if (const Entry* e = find(key)) return *e;
  throw ConfigError(line, std::string(key), "missing in section [" + name + "]");
}

std::string Section::get_string(std::string_view key) const { return require(key).value; }

std::optional<std::string> Section::get_optional(std::string_view key) const {
  if (const Entry* e = find(key)) return e->value;
  return std::nullopt;
}

double Section::get_double(std::string_view key) const { return parse_double(require(key)); }

std::optional<double> Section::get_optional_double(std::string_view key) const {
  if (const Entry* e = find(key)) return parse_double(*e);
  return std::nullopt;
}

int Section::get_int(std::string_view key) const { return parse_int(require(key)); }

bool Section::get_bool(std::string_view key) const {
  const Entry& e = require(key);
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ConfigError(e.line, e.key, "expected true/false, got '" + e.value + "'");
}

std::vector<Section> parse(std::string_view text) {
  std::vector<Section> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(line_no, "", "malformed section header '" + std::string(line) + "'");
      }
      sections.push_back(Section{std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "", "expected 'key = value', got '" + std::string(line) + "'");
    }
    if (sections.empty()) {
      throw ConfigError(line_no, std::string(trim(line.substr(0, eq))), "entry outside of any section");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    Section& current = sections.back();
    if (current.find(key) != nullptr) {
      throw ConfigError(line_no, key, "duplicate key in section [" + current.name + "]");
    }
    current.entries.push_back(Entry{key, std::string(trim(line.substr(eq + 1))), line_no});
  }
  return sections;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(const Entry& entry) {
  double out = 0.0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(out)) {
    throw ConfigError(entry.line, entry.key, "expected a number, got '" + entry.value + "'");
  }
  return out;
}

int parse_int(const Entry& entry) {
  int out = 0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError(entry.line, entry.key, "expected an integer, got '" + entry.value + "'");
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    auto end = value.find(sep, pos);
    if (end == std::string_view::npos) end = value.size();
    auto item = trim(value.substr(pos, end - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = end + 1;
  }
  return out;
}

}  // namespace nhqc::config
