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
#include <vector>

#include "kgenrich/aligner.hpp"
#include "kgenrich/entity_resolver.hpp"
#include "kgenrich/graph.hpp"

namespace kgenrich {

// A statement proposed for a gap subject, with the external value it came from.
struct CandidateStatement {
  std::string subject;   // target gap subject
  std::string property;  // target property
  Value object;          // resolved target node, the raw external id, or a literal
  Value external_object;
  std::vector<std::string> path;
  bool ambiguous = false;     // the external object maps back to several target nodes
  bool unresolvable = false;  // item terminal without an inverse mapping
  std::string source_graph;
  Provenance provenance = Provenance::ExternalCandidate;

  Statement to_statement() const { return {subject, property, object, provenance, source_graph}; }
};

// Terminal values reachable from `start` by applying the steps in order.
// Literals reached before the last step end that branch. Sorted, unique.
std::vector<Value> follow_path(const Graph& g, std::string_view start, const PropertyPath& path);

// Candidates for every (gap subject, external id) in `unknowns`. Item
// terminals are inverse-resolved through `mapping`; literal terminals are
// kept. Duplicates on (subject, property, object) collapse into one entry.
// Result is sorted by (subject, object).
std::vector<CandidateStatement> retrieve(const Graph& g, const NodeSetMap& unknowns, const PropertyPath& path,
                                         const EntityMapping& mapping, std::string_view property);

}  // namespace kgenrich
