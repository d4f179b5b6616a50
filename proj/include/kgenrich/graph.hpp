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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgenrich/value.hpp"

namespace kgenrich {

using TermId = std::uint32_t;

struct Edge {
  TermId subject = 0;
  TermId property = 0;
  TermId object = 0;
  auto operator<=>(const Edge&) const = default;
};

// Namespace IRI -> short token table. The longest matching namespace wins;
// IRIs outside every namespace are kept in full.
class PrefixTable {
 public:
  PrefixTable() = default;
  PrefixTable(std::initializer_list<std::pair<std::string, std::string>> entries);

  // Common Wikidata, DBpedia, Getty and W3C namespaces. Wikidata entity and
  // direct-claim namespaces shorten to bare ids ("Q42", "P31").
  static PrefixTable defaults();

  // An empty token drops the namespace entirely.
  void add(std::string token, std::string ns);
  std::string shorten(std::string_view iri) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // (token, namespace)
};

struct LoadOptions {
  PrefixTable prefixes = PrefixTable::defaults();
  // Fraction of malformed data lines tolerated before the load fails.
  double max_malformed_ratio = 0.10;
  std::vector<std::string> label_properties = {"rdfs:label", "label"};
};

struct LoadStats {
  std::size_t data_lines = 0;
  std::size_t malformed_lines = 0;
  std::size_t first_malformed_line = 0;  // 1-based; 0 when none
  std::size_t duplicate_edges = 0;
};

enum class Provenance { TargetKnown, ExternalCandidate, Validated };

std::string_view to_string(Provenance p);

// A (subject, property, object) edge detached from any graph's term table.
struct Statement {
  std::string subject;
  std::string property;
  Value object;
  Provenance provenance = Provenance::TargetKnown;
  std::string source_graph;

  // ExternalCandidate -> Validated. Any other transition throws InvariantViolation.
  void promote();

  auto operator<=>(const Statement&) const = default;
};

class GraphBuilder;

// Immutable, fully indexed in-memory graph. Edges are deduplicated and kept
// in three sort orders (subject-, property- and object-major) so every
// lookup is a binary search.
class Graph {
 public:
  Graph() = default;

  const std::string& tag() const { return tag_; }
  std::size_t edge_count() const { return spo_.size(); }
  std::size_t term_count() const { return terms_.size(); }
  // Distinct item nodes in subject or object position.
  std::size_t node_count() const;
  const LoadStats& stats() const { return stats_; }

  const Value& term(TermId id) const { return terms_[id]; }
  std::optional<TermId> find(const Value& v) const;
  std::optional<TermId> find_node(std::string_view id) const;
  bool contains_node(std::string_view id) const { return find_node(id).has_value(); }

  // Edges in (subject, property, object) order.
  std::span<const Edge> edges() const { return spo_; }
  std::span<const Edge> out_edges(TermId subject) const;
  std::span<const Edge> out_edges(TermId subject, TermId property) const;
  // Edges in (property, subject, object) order.
  std::span<const Edge> property_edges(TermId property) const;
  // Edges in (object, property, subject) order.
  std::span<const Edge> in_edges(TermId object) const;
  std::span<const Edge> in_edges(TermId object, TermId property) const;

  // Distinct subjects, in TermId order.
  std::vector<TermId> subjects() const;

  // Exact object set for (subject, property), sorted by Value ordering.
  std::vector<Value> objects_of(std::string_view subject, std::string_view property) const;

  // Display label: a label edge if one exists (English preferred), otherwise
  // the identifier's local name. Empty ids yield nullopt.
  std::optional<std::string> label_of(std::string_view node) const;

  std::vector<Statement> statements(Provenance provenance = Provenance::TargetKnown) const;

 private:
  friend class GraphBuilder;

  std::string tag_;
  std::vector<Value> terms_;
  std::unordered_map<std::string, TermId> index_;  // encode_value(term) -> id
  std::vector<Edge> spo_;
  std::vector<Edge> pso_;
  std::vector<Edge> ops_;
  std::vector<TermId> label_properties_;
  LoadStats stats_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::string tag,
                        std::vector<std::string> label_properties = {"rdfs:label", "label"});

  TermId intern(const Value& v);
  TermId intern_node(std::string_view id);

  void add(TermId subject, TermId property, TermId object);
  void add(std::string_view subject, std::string_view property, const Value& object);
  void add(std::string_view subject, std::string_view property, std::string_view object_node) {
    add(subject, property, Value::item(std::string(object_node)));
  }

  LoadStats& stats() { return stats_; }

  Graph build() &&;

 private:
  std::string tag_;
  std::vector<std::string> label_properties_;
  std::vector<Value> terms_;
  std::unordered_map<std::string, TermId> index_;
  std::vector<Edge> edges_;
  LoadStats stats_;
};

// Local name of an identifier: the part after the last ':' for CURIEs, after
// the last '/' or '#' for full IRIs. Ids without a namespace come back as is.
std::string local_name(std::string_view id);

// W3C N-Triples. Malformed lines are counted and skipped; exceeding
// options.max_malformed_ratio raises FormatError naming the first bad line.
Graph load_ntriples(const std::filesystem::path& path, std::string graph_tag,
                    const LoadOptions& options = {});
Graph parse_ntriples(std::istream& in, std::string graph_tag, const LoadOptions& options = {});

// Tab-separated edge file with a header holding at least node1, label, node2.
Graph load_edge_tsv(const std::filesystem::path& path, std::string graph_tag,
                    const LoadOptions& options = {});
Graph parse_edge_tsv(std::istream& in, std::string graph_tag, const LoadOptions& options = {});

// Picks the loader from the extension: .nt -> N-Triples, anything else -> edge-TSV.
Graph load_graph(const std::filesystem::path& path, std::string graph_tag,
                 const LoadOptions& options = {});

// Writes `node1 label node2` rows in sorted order; reloads to the same edge set.
void write_edge_tsv(const Graph& g, std::ostream& out);
void write_edge_tsv(const Graph& g, const std::filesystem::path& path);

}  // namespace kgenrich
