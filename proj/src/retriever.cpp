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

#include "kgenrich/retriever.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace kgenrich {

std::vector<Value> follow_path(const Graph& g, std::string_view start, const PropertyPath& path) {
  auto s = g.find_node(start);
  if (!s || path.steps.empty()) return {};
  std::vector<TermId> frontier{*s};
  for (std::size_t i = 0; i < path.steps.size() && !frontier.empty(); ++i) {
    auto prop = g.find_node(path.steps[i]);
    if (!prop) return {};
    const bool last = i + 1 == path.steps.size();
    std::vector<TermId> next;
    for (TermId u : frontier) {
      for (const Edge& e : g.out_edges(u, *prop)) {
        if (!last && !g.term(e.object).is_item()) continue;
        next.push_back(e.object);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  std::vector<Value> out;
  out.reserve(frontier.size());
  for (TermId t : frontier) out.push_back(g.term(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CandidateStatement> retrieve(const Graph& g, const NodeSetMap& unknowns, const PropertyPath& path,
                                         const EntityMapping& mapping, std::string_view property) {
  // Keyed on (subject, object); std::map keeps the output order stable.
  std::map<std::pair<std::string, Value>, CandidateStatement> merged;
  auto emit = [&](CandidateStatement c) {
    auto key = std::make_pair(c.subject, c.object);
    auto [it, inserted] = merged.try_emplace(key, c);
    if (!inserted) {
      it->second.ambiguous = it->second.ambiguous || c.ambiguous;
      it->second.unresolvable = it->second.unresolvable && c.unresolvable;
      if (c.external_object < it->second.external_object) it->second.external_object = c.external_object;
    }
  };

  for (const auto& [subject, externals] : unknowns) {
    for (const auto& ext : externals) {
      for (const Value& terminal : follow_path(g, ext, path)) {
        CandidateStatement base;
        base.subject = subject;
        base.property = std::string(property);
        base.external_object = terminal;
        base.path = path.steps;
        base.source_graph = g.tag();
        if (!terminal.is_item()) {
          base.object = terminal;
          emit(std::move(base));
          continue;
        }
        auto it = mapping.inverse.find(terminal.id());
        if (it == mapping.inverse.end()) {
          base.object = terminal;
          base.unresolvable = true;
          emit(std::move(base));
          continue;
        }
        base.ambiguous = it->second.size() > 1;
        for (const auto& target : it->second) {
          CandidateStatement c = base;
          c.object = Value::item(target);
          emit(std::move(c));
        }
      }
    }
  }

  std::vector<CandidateStatement> out;
  out.reserve(merged.size());
  for (auto& [key, c] : merged) out.push_back(std::move(c));
  return out;
}

}  // namespace kgenrich
