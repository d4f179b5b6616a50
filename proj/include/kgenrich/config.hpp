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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgenrich/aligner.hpp"
#include "kgenrich/entity_resolver.hpp"
#include "kgenrich/gaps.hpp"
#include "kgenrich/graph.hpp"
#include "kgenrich/validator.hpp"

namespace kgenrich {

struct ExternalGraphConfig {
  std::string name;
  std::filesystem::path path;
  std::vector<std::string> link_properties;
  IdTransform transform;
  std::optional<int> max_path_length;  // overrides [alignment] max_path_length
};

enum class ReportFormat { Tsv, Json };

// One experiment, read from an INI-style file with sections
//
//   [graphs]      target = <file>, <name> = <file> per external graph,
//                 max_malformed, label_properties
//   [prefixes]    <token> = <namespace IRI>
//   [mappings]    <name>.link_property (comma list), <name>.transform.prefix,
//                 <name>.transform.suffix, <name>.transform.space
//   [alignment]   max_path_length, sample_cap, top_k, similarity_threshold,
//                 mode, sampling, seed, threads, <name>.max_path_length
//   [validation]  constraints, cutoff_year, depth_cap, instance_of,
//                 subclass_of, no_value, datatype.<property>
//   [query]       properties, class, type_property
//   [output]      dir, statements, report
//
// Relative paths resolve against the directory of the config file. A config
// used only for its mappings may omit [graphs]; Workspace requires them.
struct PipelineConfig {
  std::filesystem::path target_path;
  std::vector<ExternalGraphConfig> externals;  // sorted by name
  LoadOptions load;
  AlignConfig align;
  ValidationConfig validation;
  std::optional<std::filesystem::path> constraints_path;
  std::map<std::string, ValueKind> datatypes;
  std::set<std::string> no_value_markers = {"novalue", "somevalue"};
  std::vector<std::string> properties;
  std::optional<EntityFilter> entity_filter;
  std::filesystem::path output_dir = "out";
  std::string statements_file = "statements.tsv";
  std::string report_file = "report";  // written as <report>.tsv and <report>.json

  const ExternalGraphConfig& external(std::string_view name) const;
  AlignConfig align_for(const ExternalGraphConfig& ext) const;
};

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace kgenrich
