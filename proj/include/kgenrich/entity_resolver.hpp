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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgenrich/graph.hpp"

namespace kgenrich {

using NodeSetMap = std::map<std::string, std::set<std::string>>;

// Literal rewrite of a link value into an external node id:
// prefix + value (spaces replaced) + suffix.
struct IdTransform {
  std::string prefix;
  std::string suffix;
  std::string space_replacement = "%20";

  // nullopt when the value is empty or carries control characters.
  std::optional<std::string> apply(std::string_view raw) const;
};

// Bidirectional target <-> external node correspondence derived from
// identifier-link edges. `forward` and `inverse` are exact transposes.
struct EntityMapping {
  std::vector<std::string> link_properties;
  IdTransform transform;
  NodeSetMap forward;  // target node -> external nodes
  NodeSetMap inverse;  // external node -> target nodes
  std::size_t skipped_values = 0;

  void add(const std::string& target, const std::string& external);
  // Union with another mapping (e.g. sitelinks plus an external-id property).
  void merge(const EntityMapping& other);
};

EntityMapping build_mapping(const Graph& target, std::string_view link_property,
                            const IdTransform& transform = {});

struct Resolution {
  NodeSetMap mapped;
  std::size_t requested = 0;
  // mapped.size() / requested; 0 for an empty request.
  double coverage = 0.0;
};

Resolution resolve(const EntityMapping& m, const std::set<std::string>& nodes);

struct InverseResolution {
  NodeSetMap mapped;
  std::set<std::string> ambiguous;  // externals that map back to more than one target node
};

InverseResolution inverse_resolve(const EntityMapping& m, const std::set<std::string>& externals);

}  // namespace kgenrich
