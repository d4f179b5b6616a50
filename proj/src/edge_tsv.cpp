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

#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "kgenrich/error.hpp"
#include "kgenrich/graph.hpp"
#include "load_common.hpp"

namespace kgenrich {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::optional<std::string> read_node(std::string_view field, const PrefixTable& prefixes) {
  if (field.size() > 2 && field.front() == '<' && field.back() == '>')
    return prefixes.shorten(field.substr(1, field.size() - 2));
  if (!looks_like_node_id(field)) return std::nullopt;
  return prefixes.shorten(field);
}

}  // namespace

Graph parse_edge_tsv(std::istream& in, std::string graph_tag, const LoadOptions& options) {
  GraphBuilder builder(graph_tag, options.label_properties);
  std::string line;
  std::size_t line_no = 0;

  std::optional<std::size_t> col_node1, col_label, col_node2;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (auto f : split_tabs(line)) header.emplace_back(detail::trim(f));
    break;
  }
  if (header.empty()) return std::move(builder).build();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "node1") col_node1 = i;
    else if (header[i] == "label") col_label = i;
    else if (header[i] == "node2") col_node2 = i;
  }
  if (!col_node1 || !col_label || !col_node2) {
    std::vector<std::string> missing;
    if (!col_node1) missing.emplace_back("node1");
    if (!col_label) missing.emplace_back("label");
    if (!col_node2) missing.emplace_back("node2");
    throw FormatError(fmt::format("{}: edge file header lacks column(s) {}; found columns: {}", graph_tag,
                                  fmt::join(missing, ", "), fmt::join(header, ", ")));
  }
  const std::size_t needed = std::max({*col_node1, *col_label, *col_node2}) + 1;

  std::string first_bad;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++builder.stats().data_lines;
    auto fields = split_tabs(line);
    if (fields.size() < needed) {
      detail::note_malformed(builder.stats(), line_no, line, first_bad);
      continue;
    }
    auto subject = read_node(fields[*col_node1], options.prefixes);
    auto property = read_node(fields[*col_label], options.prefixes);
    auto object = decode_value(fields[*col_node2]);
    if (!subject || !property || !object) {
      detail::note_malformed(builder.stats(), line_no, line, first_bad);
      continue;
    }
    if (object->is_item()) *object = Value::item(options.prefixes.shorten(object->id()));
    builder.add(*subject, *property, *object);
  }
  detail::enforce_malformed_ratio(builder.stats(), options.max_malformed_ratio, graph_tag, first_bad);
  return std::move(builder).build();
}

Graph load_edge_tsv(const std::filesystem::path& path, std::string graph_tag, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_edge_tsv(in, std::move(graph_tag), options);
}

}  // namespace kgenrich
