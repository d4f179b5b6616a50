// Copyright 2026 The kgenrich Authors.
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

#include <string>
#include <string_view>

#include <fmt/format.h>

#include "kgenrich/error.hpp"
#include "kgenrich/graph.hpp"

namespace kgenrich::detail {

inline void note_malformed(LoadStats& stats, std::size_t line_no, std::string_view line,
                           std::string& first_line) {
  if (stats.malformed_lines++ == 0) {
    stats.first_malformed_line = line_no;
    first_line = std::string(line.substr(0, 120));
  }
}

inline void enforce_malformed_ratio(const LoadStats& stats, double max_ratio, std::string_view source,
                                    std::string_view first_line) {
  if (stats.malformed_lines == 0 || stats.data_lines == 0) return;
  double ratio = static_cast<double>(stats.malformed_lines) / static_cast<double>(stats.data_lines);
  if (ratio > max_ratio) {
    throw FormatError(fmt::format("{}: {} of {} lines malformed (limit {:.0f}%); first at line {}: {}",
                                  source, stats.malformed_lines, stats.data_lines, max_ratio * 100.0,
                                  stats.first_malformed_line, first_line));
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace kgenrich::detail
