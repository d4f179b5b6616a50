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
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgenrich/aligner.hpp"
#include "kgenrich/config.hpp"
#include "kgenrich/entity_resolver.hpp"
#include "kgenrich/gaps.hpp"
#include "kgenrich/graph.hpp"
#include "kgenrich/retriever.hpp"
#include "kgenrich/validator.hpp"

namespace kgenrich {

struct StageTimings {
  double entity_align = 0.0;
  double property_align = 0.0;
  double retrieval = 0.0;
  double datatype_validation = 0.0;
  double valuetype_validation = 0.0;
  double total = 0.0;

  StageTimings& operator+=(const StageTimings& o);
};

enum class RunStatus { Enriched, NoAlignment, Failed };

std::string_view to_string(RunStatus s);

// Counts and rates for one (property, external graph) run, or an aggregate
// row (property "*").
struct EnrichmentResult {
  std::string property;
  std::string graph;
  RunStatus status = RunStatus::Enriched;
  std::string message;  // failure diagnostic or warning
  std::string path;     // selected path, " / "-joined; empty without alignment

  std::size_t s_w = 0;  // known statements
  std::size_t s_g = 0;  // retrieved candidates
  std::size_t s_e = 0;  // validated new statements
  std::size_t s_total = 0;
  std::size_t n_k = 0;  // known entities
  std::size_t n_u = 0;  // gap entities
  std::size_t n_f = 0;  // gap entities with at least one candidate
  std::size_t n_c = 0;  // gap entities with at least one validated statement
  StageTimings timings;

  std::optional<double> r_e() const;         // s_e / s_w
  std::optional<double> r_e_entity() const;  // n_c / n_k
  std::optional<double> r_c() const;         // s_e / s_g
  std::optional<double> r_r() const;         // n_c / n_u
};

// An external graph with its entity mapping into the target graph.
struct ExternalSource {
  std::string name;
  const Graph* graph = nullptr;
  EntityMapping mapping;
  AlignConfig align;
};

// Builds one mapping per configured link property and merges them.
EntityMapping build_source_mapping(const Graph& target, const ExternalGraphConfig& ext);

struct EnrichOptions {
  ValidationConfig validation;
  const ConstraintSet* constraints = nullptr;
  std::map<std::string, ValueKind> datatypes;
  std::set<std::string> no_value_markers = {"novalue", "somevalue"};
  std::optional<EntityFilter> entity_filter;
};

// Everything one enrichment run produced, stage by stage.
struct PropertyRun {
  EnrichmentResult result;
  GapPartition gaps;
  std::vector<KnownPair> known_pairs;  // mapped into the external graph
  Alignment alignment;
  std::vector<CandidateStatement> candidates;  // S_g
  ValidationOutcome validation;                // accepted = S_e
};

// Mapped (external subject, external object) pairs for the known statements.
// Item objects go through the mapping; literal objects are kept; no-value
// markers are dropped.
std::vector<KnownPair> map_known_pairs(const GapPartition& gaps, const EntityMapping& mapping,
                                       const std::set<std::string>& no_value_markers);

// Gap detection, entity resolution, path alignment, retrieval and validation
// for one property against one external graph. Partition and subject-safety
// invariants are checked on every run; a violation throws InvariantViolation.
PropertyRun enrich_property(const Graph& target, const ExternalSource& source, std::string_view property,
                            const EnrichOptions& options);

// Same stages, but retrieval runs over subjects that already hold a value so
// the external values can be compared with the existing ones.
PropertyRun overlap_run(const Graph& target, const ExternalSource& source, std::string_view property,
                        const EnrichOptions& options);

struct EmittedStatement {
  std::string subject;
  std::string property;
  Value object;
  std::set<std::string> sources;

  auto operator<=>(const EmittedStatement&) const = default;
};

struct BatchResult {
  std::vector<EnrichmentResult> rows;        // one per (property, graph); r_e desc
  std::vector<EnrichmentResult> aggregates;  // one per graph, then "both"
  std::vector<EmittedStatement> statements;  // union over graphs, sorted
  std::optional<double> median_novel_per_property;
};

BatchResult batch_enrich(const Graph& target, std::span<const ExternalSource> sources,
                         std::span<const std::string> properties, const EnrichOptions& options);

// Loaded graphs and mappings for a config; owns everything ExternalSource points at.
class Workspace {
 public:
  explicit Workspace(const PipelineConfig& cfg);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const Graph& target() const { return target_; }
  const std::vector<ExternalSource>& sources() const { return sources_; }
  const ExternalSource& source(std::string_view name) const;
  const EnrichOptions& options() const { return options_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  PipelineConfig cfg_;
  Graph target_;
  std::vector<std::unique_ptr<Graph>> external_graphs_;
  std::vector<ExternalSource> sources_;
  ConstraintSet constraints_;
  EnrichOptions options_;
};

}  // namespace kgenrich
