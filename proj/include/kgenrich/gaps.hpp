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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgenrich/graph.hpp"

namespace kgenrich {

// Restricts the entity universe to instances of one class.
struct EntityFilter {
  std::string class_id;
  std::string type_property = "P31";
};

using SubjectObject = std::pair<std::string, Value>;

// Split of the entity universe E for one property into entities that already
// hold a value (E_w) and entities with none (E_u). The two sets are disjoint
// and their union is E.
struct GapPartition {
  std::string property;
  std::vector<SubjectObject> known;       // every (s, o) for the property with s in E, sorted
  std::set<std::string> known_subjects;   // E_w
  std::set<std::string> unknown_subjects; // E_u
  std::optional<std::string> warning;

  std::size_t entity_count() const { return known_subjects.size() + unknown_subjects.size(); }
};

// Without a filter, E is every node that is the subject of at least one edge.
// A subject whose only value is a no-value marker still counts as known.
GapPartition detect_gaps(const Graph& g, std::string_view property,
                         const std::optional<EntityFilter>& filter = std::nullopt);

}  // namespace kgenrich
