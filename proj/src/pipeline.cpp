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

#include "kgenrich/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include <fmt/format.h>

#include "kgenrich/error.hpp"

namespace kgenrich {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

bool is_marker(const Value& v, const std::set<std::string>& markers) {
  return v.is_item() && markers.contains(v.id());
}

void check_partition(const GapPartition& gaps) {
  for (const auto& s : gaps.known_subjects)
    if (gaps.unknown_subjects.contains(s))
      throw InvariantViolation(fmt::format("{}: subject {} is both known and unknown", gaps.property, s));
  for (const auto& [s, o] : gaps.known)
    if (!gaps.known_subjects.contains(s))
      throw InvariantViolation(fmt::format("{}: known statement subject {} outside E_w", gaps.property, s));
}

// S_e is a subset of S_g, and every candidate subject belongs to the scope
// the run targeted (E_u for enrichment, E_w for overlap runs).
void check_subject_safety(const PropertyRun& run, bool overlap) {
  const auto& scope = overlap ? run.gaps.known_subjects : run.gaps.unknown_subjects;
  for (const auto& c : run.candidates) {
    if (!scope.contains(c.subject))
      throw InvariantViolation(fmt::format("{}: candidate subject {} outside its scope", c.property, c.subject));
    if (!overlap && run.gaps.known_subjects.contains(c.subject))
      throw InvariantViolation(fmt::format("{}: candidate for known subject {}", c.property, c.subject));
  }
  std::set<std::tuple<std::string, std::string, Value>> candidate_keys;
  for (const auto& c : run.candidates) candidate_keys.emplace(c.subject, c.property, c.object);
  for (const auto& s : run.validation.accepted)
    if (!candidate_keys.contains({s.subject, s.property, s.object}))
      throw InvariantViolation(fmt::format("{}: validated statement for {} is not a candidate", s.property, s.subject));
}

PropertyRun run_stages(const Graph& target, const ExternalSource& source, std::string_view property,
                       const EnrichOptions& options, bool overlap) {
  if (!source.graph) throw ConfigError(fmt::format("external graph '{}' is not loaded", source.name));
  const auto run_start = Clock::now();
  PropertyRun run;
  EnrichmentResult& r = run.result;
  r.property = std::string(property);
  r.graph = source.name;

  auto t = Clock::now();
  run.gaps = detect_gaps(target, property, options.entity_filter);
  check_partition(run.gaps);
  if (run.gaps.warning) r.message = *run.gaps.warning;
  r.s_w = run.gaps.known.size();
  r.n_k = run.gaps.known_subjects.size();
  r.n_u = run.gaps.unknown_subjects.size();
  run.known_pairs = map_known_pairs(run.gaps, source.mapping, options.no_value_markers);
  auto scope = resolve(source.mapping, overlap ? run.gaps.known_subjects : run.gaps.unknown_subjects);
  r.timings.entity_align = seconds_since(t);

  auto finish = [&](RunStatus status) -> PropertyRun {
    r.status = status;
    r.s_total = r.s_w + r.s_e;
    r.timings.total = seconds_since(run_start);
    return std::move(run);
  };

  t = Clock::now();
  if (run.known_pairs.empty()) {
    r.timings.property_align = seconds_since(t);
    return finish(RunStatus::NoAlignment);
  }
  auto paths = enumerate_paths(*source.graph, run.known_pairs, source.align);
  run.alignment = score_and_select(std::move(paths), target.label_of(property).value_or(std::string(property)),
                                   *source.graph, source.align);
  r.timings.property_align = seconds_since(t);
  const PropertyPath* path = run.alignment.selected_path();
  if (!path) return finish(RunStatus::NoAlignment);
  r.path = path->to_string();

  t = Clock::now();
  run.candidates = retrieve(*source.graph, scope.mapped, *path, source.mapping, property);
  r.timings.retrieval = seconds_since(t);

  std::vector<SubjectObject> typed_known;
  for (const auto& so : run.gaps.known)
    if (!is_marker(so.second, options.no_value_markers)) typed_known.push_back(so);
  ValidationConfig vcfg = options.validation;
  if (auto it = options.datatypes.find(std::string(property)); it != options.datatypes.end())
    vcfg.expected_datatype = it->second;
  const ValueTypeConstraint* constraint = nullptr;
  if (options.constraints) {
    auto it = options.constraints->find(std::string(property));
    if (it != options.constraints->end()) constraint = &it->second;
  }
  run.validation = validate(target, run.candidates, typed_known, constraint, vcfg);
  r.timings.datatype_validation = run.validation.datatype_seconds;
  r.timings.valuetype_validation = run.validation.valuetype_seconds;

  std::set<std::string> found, compatible;
  for (const auto& c : run.candidates) found.insert(c.subject);
  for (const auto& s : run.validation.accepted) compatible.insert(s.subject);
  r.s_g = run.candidates.size();
  r.s_e = run.validation.accepted.size();
  r.n_f = found.size();
  r.n_c = compatible.size();
  check_subject_safety(run, overlap);
  return finish(RunStatus::Enriched);
}

bool rate_desc(const EnrichmentResult& a, const EnrichmentResult& b) {
  auto ra = a.r_e(), rb = b.r_e();
  if (ra.has_value() != rb.has_value()) return ra.has_value();
  if (ra && rb && *ra != *rb) return *ra > *rb;
  return std::tie(a.property, a.graph) < std::tie(b.property, b.graph);
}

}  // namespace

StageTimings& StageTimings::operator+=(const StageTimings& o) {
  entity_align += o.entity_align;
  property_align += o.property_align;
  retrieval += o.retrieval;
  datatype_validation += o.datatype_validation;
  valuetype_validation += o.valuetype_validation;
  total += o.total;
  return *this;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Enriched: return "enriched";
    case RunStatus::NoAlignment: return "no-alignment";
    case RunStatus::Failed: return "failed";
  }
  return "failed";
}

std::optional<double> EnrichmentResult::r_e() const { return ratio(s_e, s_w); }
std::optional<double> EnrichmentResult::r_e_entity() const { return ratio(n_c, n_k); }
std::optional<double> EnrichmentResult::r_c() const { return ratio(s_e, s_g); }
std::optional<double> EnrichmentResult::r_r() const { return ratio(n_c, n_u); }

EntityMapping build_source_mapping(const Graph& target, const ExternalGraphConfig& ext) {
  if (ext.link_properties.empty())
    throw ConfigError(fmt::format("missing key [mappings] {}.link_property", ext.name));
  EntityMapping m;
  for (const auto& link : ext.link_properties) m.merge(build_mapping(target, link, ext.transform));
  m.transform = ext.transform;
  return m;
}

std::vector<KnownPair> map_known_pairs(const GapPartition& gaps, const EntityMapping& mapping,
                                       const std::set<std::string>& no_value_markers) {
  std::vector<KnownPair> out;
  for (const auto& [subject, object] : gaps.known) {
    if (is_marker(object, no_value_markers)) continue;
    auto s_it = mapping.forward.find(subject);
    if (s_it == mapping.forward.end()) continue;
    for (const auto& ext_subject : s_it->second) {
      if (!object.is_item()) {
        out.emplace_back(ext_subject, object);
        continue;
      }
      auto o_it = mapping.forward.find(object.id());
      if (o_it == mapping.forward.end()) continue;
      for (const auto& ext_object : o_it->second) out.emplace_back(ext_subject, Value::item(ext_object));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PropertyRun enrich_property(const Graph& target, const ExternalSource& source, std::string_view property,
                            const EnrichOptions& options) {
  return run_stages(target, source, property, options, false);
}

PropertyRun overlap_run(const Graph& target, const ExternalSource& source, std::string_view property,
                        const EnrichOptions& options) {
  return run_stages(target, source, property, options, true);
}

BatchResult batch_enrich(const Graph& target, std::span<const ExternalSource> sources,
                         std::span<const std::string> properties, const EnrichOptions& options) {
  BatchResult out;
  std::map<std::string, EnrichmentResult> per_graph;
  EnrichmentResult both;
  both.property = "*";
  both.graph = "both";

  using Key = std::tuple<std::string, std::string, Value>;
  std::map<Key, std::set<std::string>> accepted;  // statement -> source graphs
  std::set<Key> candidates;
  std::vector<double> novel_per_property;

  for (const auto& property : properties) {
    std::set<Key> property_accepted;
    std::set<std::string> property_compatible;
    std::optional<EnrichmentResult> first;
    for (const auto& source : sources) {
      EnrichmentResult row;
      try {
        PropertyRun run = enrich_property(target, source, property, options);
        row = run.result;
        for (const auto& c : run.candidates) candidates.emplace(c.subject, c.property, c.object);
        for (const auto& s : run.validation.accepted) {
          Key key{s.subject, s.property, s.object};
          accepted[key].insert(source.name);
          property_accepted.insert(key);
          property_compatible.insert(s.subject);
        }
      } catch (const Error& e) {
        row = EnrichmentResult{};
        row.property = property;
        row.graph = source.name;
        row.status = RunStatus::Failed;
        row.message = e.what();
      }
      if (!first && row.status != RunStatus::Failed) first = row;

      auto& agg = per_graph[source.name];
      agg.property = "*";
      agg.graph = source.name;
      agg.s_w += row.s_w;
      agg.s_g += row.s_g;
      agg.s_e += row.s_e;
      agg.n_k += row.n_k;
      agg.n_u += row.n_u;
      agg.n_f += row.n_f;
      agg.n_c += row.n_c;
      agg.timings += row.timings;
      both.timings += row.timings;
      out.rows.push_back(std::move(row));
    }
    if (first) {
      both.s_w += first->s_w;
      both.n_k += first->n_k;
      both.n_u += first->n_u;
    }
    both.n_c += property_compatible.size();
    novel_per_property.push_back(static_cast<double>(property_accepted.size()));
  }

  both.s_g = candidates.size();
  both.s_e = accepted.size();
  for (auto& [name, agg] : per_graph) {
    agg.s_total = agg.s_w + agg.s_e;
    out.aggregates.push_back(agg);
  }
  both.s_total = both.s_w + both.s_e;
  std::set<std::string> found_pairs;
  for (const auto& [s, p, o] : candidates) found_pairs.insert(p + '\t' + s);
  both.n_f = found_pairs.size();
  out.aggregates.push_back(both);

  std::sort(out.rows.begin(), out.rows.end(), rate_desc);

  out.statements.reserve(accepted.size());
  for (auto& [key, srcs] : accepted) {
    auto& [s, p, o] = key;
    out.statements.push_back({s, p, o, srcs});
  }
  std::sort(out.statements.begin(), out.statements.end(), [](const EmittedStatement& a, const EmittedStatement& b) {
    return std::tie(a.property, a.subject, a.object) < std::tie(b.property, b.subject, b.object);
  });

  if (!novel_per_property.empty()) {
    std::sort(novel_per_property.begin(), novel_per_property.end());
    const std::size_t n = novel_per_property.size();
    out.median_novel_per_property =
        n % 2 ? novel_per_property[n / 2] : (novel_per_property[n / 2 - 1] + novel_per_property[n / 2]) / 2.0;
  }
  return out;
}

Workspace::Workspace(const PipelineConfig& cfg) : cfg_(cfg) {
  if (cfg_.target_path.empty()) throw ConfigError("missing key [graphs] target");
  for (const auto& ext : cfg_.externals)
    if (ext.path.empty()) throw ConfigError(fmt::format("missing key [graphs] {}", ext.name));
  target_ = load_graph(cfg_.target_path, "target", cfg_.load);
  if (cfg_.constraints_path) constraints_ = load_constraints(*cfg_.constraints_path);
  for (const auto& ext : cfg_.externals) {
    external_graphs_.push_back(std::make_unique<Graph>(load_graph(ext.path, ext.name, cfg_.load)));
    sources_.push_back({ext.name, external_graphs_.back().get(), build_source_mapping(target_, ext), cfg_.align_for(ext)});
  }
  options_.validation = cfg_.validation;
  options_.constraints = &constraints_;
  options_.datatypes = cfg_.datatypes;
  options_.no_value_markers = cfg_.no_value_markers;
  options_.entity_filter = cfg_.entity_filter;
}

const ExternalSource& Workspace::source(std::string_view name) const {
  for (const auto& s : sources_)
    if (s.name == name) return s;
  throw ConfigError(fmt::format("[graphs] has no external graph named '{}'", name));
}

}  // namespace kgenrich
