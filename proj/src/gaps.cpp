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

#include "kgenrich/gaps.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace kgenrich {

GapPartition detect_gaps(const Graph& g, std::string_view property,
                         const std::optional<EntityFilter>& filter) {
  GapPartition out;
  out.property = std::string(property);

  std::vector<TermId> universe;
  if (filter) {
    auto type_prop = g.find_node(filter->type_property);
    auto cls = g.find_node(filter->class_id);
    if (!type_prop) {
      out.warning = fmt::format("type property {} does not occur in graph {}", filter->type_property, g.tag());
    } else if (cls) {
      for (const Edge& e : g.in_edges(*cls, *type_prop)) universe.push_back(e.subject);
      std::sort(universe.begin(), universe.end());
      universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    }
  } else {
    universe = g.subjects();
  }

  auto prop = g.find_node(property);
  for (TermId s : universe) {
    const std::string& id = g.term(s).id();
    auto values = prop ? g.out_edges(s, *prop) : std::span<const Edge>{};
    if (values.empty()) {
      out.unknown_subjects.insert(id);
      continue;
    }
    out.known_subjects.insert(id);
    for (const Edge& e : values) out.known.emplace_back(id, g.term(e.object));
  }
  std::sort(out.known.begin(), out.known.end());

  if (out.known_subjects.empty() && !out.warning) {
    out.warning = prop ? fmt::format("no entity in scope holds a value for {}", property)
                       : fmt::format("property {} does not occur in graph {}", property, g.tag());
  }
  return out;
}

}  // namespace kgenrich
