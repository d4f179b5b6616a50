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

#include "kgenrich/entity_resolver.hpp"

namespace kgenrich {

namespace {

std::optional<std::string> raw_link_value(const Value& v) {
  switch (v.kind()) {
    case ValueKind::ItemRef:
    case ValueKind::String:
    case ValueKind::MonolingualText:
    case ValueKind::Other:
      return v.lexical();
    case ValueKind::Quantity:
      return v.as_quantity()->magnitude;
    case ValueKind::Date:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> IdTransform::apply(std::string_view raw) const {
  while (!raw.empty() && raw.front() == ' ') raw.remove_prefix(1);
  while (!raw.empty() && raw.back() == ' ') raw.remove_suffix(1);
  if (raw.empty()) return std::nullopt;
  std::string out = prefix;
  for (char c : raw) {
    if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) return std::nullopt;
    if (c == ' ') out += space_replacement;
    else out += c;
  }
  out += suffix;
  return out;
}

void EntityMapping::add(const std::string& target, const std::string& external) {
  forward[target].insert(external);
  inverse[external].insert(target);
}

void EntityMapping::merge(const EntityMapping& other) {
  for (const auto& p : other.link_properties) link_properties.push_back(p);
  for (const auto& [t, xs] : other.forward)
    for (const auto& x : xs) add(t, x);
  skipped_values += other.skipped_values;
}

EntityMapping build_mapping(const Graph& target, std::string_view link_property, const IdTransform& transform) {
  EntityMapping m;
  m.link_properties.emplace_back(link_property);
  m.transform = transform;
  auto prop = target.find_node(link_property);
  if (!prop) return m;
  for (const Edge& e : target.property_edges(*prop)) {
    auto raw = raw_link_value(target.term(e.object));
    auto external = raw ? transform.apply(*raw) : std::nullopt;
    if (!external) {
      ++m.skipped_values;
      continue;
    }
    m.add(target.term(e.subject).id(), *external);
  }
  return m;
}

Resolution resolve(const EntityMapping& m, const std::set<std::string>& nodes) {
  Resolution r;
  r.requested = nodes.size();
  for (const auto& n : nodes) {
    auto it = m.forward.find(n);
    if (it != m.forward.end()) r.mapped.emplace(n, it->second);
  }
  if (r.requested > 0)
    r.coverage = static_cast<double>(r.mapped.size()) / static_cast<double>(r.requested);
  return r;
}

InverseResolution inverse_resolve(const EntityMapping& m, const std::set<std::string>& externals) {
  InverseResolution r;
  for (const auto& x : externals) {
    auto it = m.inverse.find(x);
    if (it == m.inverse.end()) continue;
    r.mapped.emplace(x, it->second);
    if (it->second.size() > 1) r.ambiguous.insert(x);
  }
  return r;
}

}  // namespace kgenrich
