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

// Synthetic graphs shared by the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgenrich/gaps.hpp"
#include "kgenrich/graph.hpp"
#include "kgenrich/pipeline.hpp"
#include "kgenrich/retriever.hpp"
#include "kgenrich/validator.hpp"
#include "oracles.hpp"

namespace kgtest {

kgenrich::Graph graph_from(const std::vector<RawEdge>& edges, std::string tag = "test");

// Random labelled digraph with at most `max_edges` distinct edges and a set of
// source/target pairs, about half of them joined by a walk of length <= 4.
struct PathFixture {
  std::vector<RawEdge> edges;
  std::set<std::pair<std::string, std::string>> pairs;
};
PathFixture random_path_fixture(std::uint64_t seed, std::size_t max_edges, bool acyclic);

// One target property of the alignment gold set.
struct GoldProperty {
  std::string id;
  std::string label;
  std::string gold;  // the path step that should be selected
  std::vector<kgenrich::KnownPair> pairs;
};

struct GoldSet {
  kgenrich::Graph external;
  std::vector<GoldProperty> properties;
};

// Ten properties: four where support and label agree, three where a weakly
// named path out-supports the right one, three where a look-alike label sits
// outside the top ten by support.
GoldSet alignment_gold_set();

// Randomized validator workload with the ground truth needed by an oracle.
struct ValidatorBatch {
  kgenrich::Graph target;
  std::vector<RawEdge> target_edges;
  std::vector<std::string> properties;
  std::map<std::string, kgenrich::ValueTypeConstraint> constraints;  // some properties have none
  std::map<std::string, kgenrich::ValueKind> expected;
  std::map<std::string, std::vector<kgenrich::SubjectObject>> known;
  std::map<std::string, std::vector<kgenrich::CandidateStatement>> candidates;
};
ValidatorBatch random_validator_batch(std::uint64_t seed, std::size_t properties, std::size_t per_property);

// The three checks recomputed from the batch's raw edges.
struct OracleVerdict {
  bool datatype = false;
  bool value_type = false;
  bool range = false;
};
OracleVerdict validator_oracle(const ValidatorBatch& batch, const kgenrich::CandidateStatement& c, int depth_cap,
                               int cutoff_year);

// Writes a target TSV, external N-Triples graphs, constraints and a config
// into `dir` and returns the config path. Items and dates are mixed across
// the properties; every fourth property has no counterpart in the external
// graphs and every external graph is padded with unrelated edges.
struct PipelineFixtureSpec {
  std::size_t entities = 300;
  std::size_t properties = 5;
  std::size_t external_edges = 5000;  // per external graph, including padding
  std::size_t external_graphs = 1;
  int max_path_length = 2;
  std::uint64_t seed = 1;
};
std::filesystem::path write_pipeline_fixture(const std::filesystem::path& dir, const PipelineFixtureSpec& spec);

// Partition and subject-safety checks recomputed from a run's outputs.
// Returns a description of the first violation, or an empty string.
std::string run_violation(const kgenrich::PropertyRun& run);
std::string batch_violation(const kgenrich::Graph& target, const kgenrich::BatchResult& batch,
                            const std::optional<kgenrich::EntityFilter>& filter);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace kgtest
