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

#include "kgenrich/tsv_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "kgenrich/error.hpp"

namespace kgenrich {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string flags_of(const CandidateStatement& c) {
  if (c.ambiguous && c.unresolvable) return "ambiguous,unresolvable";
  if (c.ambiguous) return "ambiguous";
  if (c.unresolvable) return "unresolvable";
  return "-";
}

const char* tri(std::optional<bool> b) { return !b ? "-" : *b ? "1" : "0"; }

void write_candidate_fields(const CandidateStatement& c, std::ostream& out) {
  PropertyPath p;
  p.steps = c.path;
  out << c.subject << '\t' << c.property << '\t' << encode_value(c.object) << '\t' << encode_value(c.external_object)
      << '\t' << flags_of(c) << '\t' << p.to_string() << '\t' << c.source_graph;
}

constexpr const char* kCandidateHeader = "subject\tproperty\tobject\texternal_object\tflags\tpath\tsource_graph";

}  // namespace

void write_gaps(const GapPartition& gaps, std::ostream& out) {
  out << "subject\tstatus\n";
  auto k = gaps.known_subjects.begin();
  auto u = gaps.unknown_subjects.begin();
  while (k != gaps.known_subjects.end() || u != gaps.unknown_subjects.end()) {
    if (u == gaps.unknown_subjects.end() || (k != gaps.known_subjects.end() && *k < *u)) {
      out << *k++ << "\tknown\n";
    } else {
      out << *u++ << "\tunknown\n";
    }
  }
}

void write_alignment(const Alignment& alignment, std::ostream& out) {
  out << "path\tsupport\tsimilarity\tselected\n";
  for (std::size_t i = 0; i < alignment.ranked.size(); ++i) {
    const auto& p = alignment.ranked[i];
    out << p.to_string() << '\t' << p.support << '\t' << fmt::format("{:.4f}", p.similarity) << '\t'
        << (alignment.selected == i ? 1 : 0) << '\n';
  }
}

PropertyPath read_selected_path(std::istream& in) {
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.starts_with("path\t")) continue;
    }
    auto f = split_tabs(line);
    if (f.size() < 4) throw FormatError("alignment table row needs path, support, similarity, selected");
    if (f[3] == "1") {
      PropertyPath p = PropertyPath::parse(f[0]);
      p.support = std::stoul(f[1]);
      p.similarity = std::stod(f[2]);
      return p;
    }
  }
  throw FormatError("alignment table has no selected path");
}

void write_candidates(std::span<const CandidateStatement> candidates, std::ostream& out) {
  out << kCandidateHeader << '\n';
  for (const auto& c : candidates) {
    write_candidate_fields(c, out);
    out << '\n';
  }
}

std::vector<CandidateStatement> read_candidates(std::istream& in) {
  std::vector<CandidateStatement> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.starts_with("subject\t"))) continue;
    auto f = split_tabs(line);
    if (f.size() < 5) throw FormatError(fmt::format("candidates line {}: expected at least 5 columns", line_no));
    auto object = decode_value(f[2]);
    auto external = decode_value(f[3]);
    if (f[0].empty() || f[1].empty() || !object || !external)
      throw FormatError(fmt::format("candidates line {}: malformed statement", line_no));
    CandidateStatement c;
    c.subject = f[0];
    c.property = f[1];
    c.object = *object;
    c.external_object = *external;
    c.ambiguous = f[4].find("ambiguous") != std::string::npos;
    c.unresolvable = f[4].find("unresolvable") != std::string::npos;
    if (f.size() > 5) c.path = PropertyPath::parse(f[5]).steps;
    if (f.size() > 6) c.source_graph = f[6];
    out.push_back(std::move(c));
  }
  return out;
}

void write_verdicts(std::span<const ValidationVerdict> verdicts, std::ostream& out) {
  out << kCandidateHeader << "\tdatatype_ok\tvalue_type_ok\trange_ok\taccepted\treject_reason\n";
  for (const auto& v : verdicts) {
    write_candidate_fields(v.statement, out);
    out << '\t' << (v.datatype_ok ? 1 : 0) << '\t' << tri(v.value_type_ok) << '\t' << tri(v.range_ok) << '\t'
        << (v.accepted ? 1 : 0) << '\t' << (v.accepted ? "-" : std::string(to_string(v.reason))) << '\n';
  }
}

}  // namespace kgenrich
