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

#include "kgenrich/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <tuple>

#include "kgenrich/error.hpp"

namespace kgenrich {

namespace {

struct PsoLess {
  bool operator()(const Edge& a, const Edge& b) const {
    return std::tie(a.property, a.subject, a.object) < std::tie(b.property, b.subject, b.object);
  }
};

struct OpsLess {
  bool operator()(const Edge& a, const Edge& b) const {
    return std::tie(a.object, a.property, a.subject) < std::tie(b.object, b.property, b.subject);
  }
};

template <typename Proj>
std::span<const Edge> equal_span(const std::vector<Edge>& edges, Proj proj) {
  auto lo = std::partition_point(edges.begin(), edges.end(), [&](const Edge& e) { return proj(e) < 0; });
  auto hi = std::partition_point(lo, edges.end(), [&](const Edge& e) { return proj(e) <= 0; });
  return {edges.data() + (lo - edges.begin()), static_cast<std::size_t>(hi - lo)};
}

int cmp(TermId a, TermId b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

PrefixTable::PrefixTable(std::initializer_list<std::pair<std::string, std::string>> entries) {
  for (const auto& [token, ns] : entries) add(token, ns);
}

PrefixTable PrefixTable::defaults() {
  return {
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
      {"owl", "http://www.w3.org/2002/07/owl#"},
      {"xsd", "http://www.w3.org/2001/XMLSchema#"},
      {"skos", "http://www.w3.org/2004/02/skos/core#"},
      {"foaf", "http://xmlns.com/foaf/0.1/"},
      {"schema", "http://schema.org/"},
      {"dbr", "http://dbpedia.org/resource/"},
      {"dbp", "http://dbpedia.org/property/"},
      {"dbo", "http://dbpedia.org/ontology/"},
      {"dbt", "http://dbpedia.org/datatype/"},
      {"gvp", "http://vocab.getty.edu/ontology#"},
      {"ulan", "http://vocab.getty.edu/ulan/"},
      {"tgn", "http://vocab.getty.edu/tgn/"},
      {"aat", "http://vocab.getty.edu/aat/"},
      {"wikibase", "http://wikiba.se/ontology#"},
      {"", "http://www.wikidata.org/entity/"},
      {"", "http://www.wikidata.org/prop/direct/"},
  };
}

void PrefixTable::add(std::string token, std::string ns) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const auto& e) { return e.first == token && !token.empty(); });
  if (it != entries_.end()) {
    it->second = std::move(ns);
    return;
  }
  entries_.emplace_back(std::move(token), std::move(ns));
}

std::string PrefixTable::shorten(std::string_view iri) const {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& e : entries_) {
    if (e.second.empty() || !iri.starts_with(e.second) || iri.size() == e.second.size()) continue;
    if (!best || e.second.size() > best->second.size()) best = &e;
  }
  if (!best) return std::string(iri);
  auto rest = iri.substr(best->second.size());
  std::string out = best->first.empty() ? std::string(rest) : best->first + ":" + std::string(rest);
  // A shortened id must still read back as a node id.
  return looks_like_node_id(out) ? out : std::string(iri);
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::TargetKnown: return "target";
    case Provenance::ExternalCandidate: return "candidate";
    case Provenance::Validated: return "validated";
  }
  return "target";
}

void Statement::promote() {
  if (provenance != Provenance::ExternalCandidate)
    throw InvariantViolation("only external candidates can be promoted to validated");
  provenance = Provenance::Validated;
}

std::string local_name(std::string_view id) {
  std::size_t cut = std::string_view::npos;
  if (id.find("://") != std::string_view::npos) {
    cut = id.find_last_of("/#");
  } else {
    cut = id.rfind(':');
  }
  if (cut == std::string_view::npos || cut + 1 >= id.size()) return std::string(id);
  return std::string(id.substr(cut + 1));
}

std::size_t Graph::node_count() const {
  std::vector<bool> seen(terms_.size(), false);
  std::size_t n = 0;
  auto visit = [&](TermId t) {
    if (!seen[t] && terms_[t].is_item()) {
      seen[t] = true;
      ++n;
    }
  };
  for (const Edge& e : spo_) {
    visit(e.subject);
    visit(e.object);
  }
  return n;
}

std::optional<TermId> Graph::find(const Value& v) const {
  auto it = index_.find(encode_value(v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> Graph::find_node(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end() || !terms_[it->second].is_item()) return std::nullopt;
  return it->second;
}

std::span<const Edge> Graph::out_edges(TermId subject) const {
  return equal_span(spo_, [&](const Edge& e) { return cmp(e.subject, subject); });
}

std::span<const Edge> Graph::out_edges(TermId subject, TermId property) const {
  return equal_span(spo_, [&](const Edge& e) {
    int c = cmp(e.subject, subject);
    return c != 0 ? c : cmp(e.property, property);
  });
}

std::span<const Edge> Graph::property_edges(TermId property) const {
  return equal_span(pso_, [&](const Edge& e) { return cmp(e.property, property); });
}

std::span<const Edge> Graph::in_edges(TermId object) const {
  return equal_span(ops_, [&](const Edge& e) { return cmp(e.object, object); });
}

std::span<const Edge> Graph::in_edges(TermId object, TermId property) const {
  return equal_span(ops_, [&](const Edge& e) {
    int c = cmp(e.object, object);
    return c != 0 ? c : cmp(e.property, property);
  });
}

std::vector<TermId> Graph::subjects() const {
  std::vector<TermId> out;
  for (const Edge& e : spo_)
    if (out.empty() || out.back() != e.subject) out.push_back(e.subject);
  return out;
}

std::vector<Value> Graph::objects_of(std::string_view subject, std::string_view property) const {
  auto s = find_node(subject);
  auto p = find_node(property);
  if (!s || !p) return {};
  std::vector<Value> out;
  for (const Edge& e : out_edges(*s, *p)) out.push_back(terms_[e.object]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> Graph::label_of(std::string_view node) const {
  if (node.empty()) return std::nullopt;
  if (auto s = find_node(node)) {
    const Value* best = nullptr;
    int best_rank = 4;
    for (TermId p : label_properties_) {
      for (const Edge& e : out_edges(*s, p)) {
        const Value& v = terms_[e.object];
        int rank = 3;
        if (auto* t = std::get_if<MonolingualText>(&v.payload())) rank = t->language == "en" ? 0 : 2;
        else if (v.kind() == ValueKind::String) rank = 1;
        if (rank < best_rank || (rank == best_rank && best && v < *best)) {
          best = &v;
          best_rank = rank;
        }
      }
    }
    if (best && best_rank < 3) return best->lexical();
  }
  return local_name(node);
}

std::vector<Statement> Graph::statements(Provenance provenance) const {
  std::vector<Statement> out;
  out.reserve(spo_.size());
  for (const Edge& e : spo_)
    out.push_back({terms_[e.subject].id(), terms_[e.property].id(), terms_[e.object], provenance, tag_});
  return out;
}

GraphBuilder::GraphBuilder(std::string tag, std::vector<std::string> label_properties)
    : tag_(std::move(tag)), label_properties_(std::move(label_properties)) {}

TermId GraphBuilder::intern(const Value& v) {
  auto [it, inserted] = index_.try_emplace(encode_value(v), static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(v);
  return it->second;
}

TermId GraphBuilder::intern_node(std::string_view id) { return intern(Value::item(std::string(id))); }

void GraphBuilder::add(TermId subject, TermId property, TermId object) {
  if (!terms_.at(subject).is_item() || !terms_.at(property).is_item())
    throw InvariantViolation("subject and property must be node terms");
  edges_.push_back({subject, property, object});
}

void GraphBuilder::add(std::string_view subject, std::string_view property, const Value& object) {
  if (subject.empty() || property.empty())
    throw InvariantViolation("statement subject and property must be non-empty");
  add(intern_node(subject), intern_node(property), intern(object));
}

Graph GraphBuilder::build() && {
  Graph g;
  g.tag_ = std::move(tag_);
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  stats_.duplicate_edges += static_cast<std::size_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());
  g.spo_ = std::move(edges_);
  g.pso_ = g.spo_;
  std::sort(g.pso_.begin(), g.pso_.end(), PsoLess{});
  g.ops_ = g.spo_;
  std::sort(g.ops_.begin(), g.ops_.end(), OpsLess{});
  for (const auto& p : label_properties_) {
    auto it = index_.find(p);
    if (it != index_.end()) g.label_properties_.push_back(it->second);
  }
  g.terms_ = std::move(terms_);
  g.index_ = std::move(index_);
  g.stats_ = stats_;
  return g;
}

Graph load_graph(const std::filesystem::path& path, std::string graph_tag, const LoadOptions& options) {
  if (path.extension() == ".nt") return load_ntriples(path, std::move(graph_tag), options);
  return load_edge_tsv(path, std::move(graph_tag), options);
}

void write_edge_tsv(const Graph& g, std::ostream& out) {
  std::vector<std::array<std::string, 3>> rows;
  rows.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    rows.push_back({g.term(e.subject).id(), g.term(e.property).id(), encode_value(g.term(e.object))});
  std::sort(rows.begin(), rows.end());
  out << "node1\tlabel\tnode2\n";
  for (const auto& r : rows) out << r[0] << '\t' << r[1] << '\t' << r[2] << '\n';
}

void write_edge_tsv(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_edge_tsv(g, out);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace kgenrich
