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

#include "kgenrich/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "kgenrich/error.hpp"

namespace kgenrich {

namespace {

namespace pt = boost::property_tree;

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view section, std::string_view key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("[{}] {}: '{}' is not a valid number", section, key, text));
  return value;
}

double parse_real(std::string_view section, std::string_view key, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("[{}] {}: '{}' is not a valid number", section, key, text));
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

const ExternalGraphConfig& PipelineConfig::external(std::string_view name) const {
  for (const auto& e : externals)
    if (e.name == name) return e;
  throw ConfigError(fmt::format("[graphs] has no external graph named '{}'", name));
}

AlignConfig PipelineConfig::align_for(const ExternalGraphConfig& ext) const {
  AlignConfig cfg = align;
  if (ext.max_path_length) cfg.max_path_length = *ext.max_path_length;
  return cfg;
}

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config: {} (line {})", e.message(), e.line()));
  }

  PipelineConfig cfg;
  std::map<std::string, ExternalGraphConfig> externals;
  std::map<std::string, int> path_overrides;

  for (const auto& [section, entries] : tree) {
    for (const auto& [key, node] : entries) {
      const std::string value = node.data();
      if (section == "graphs") {
        if (key == "target") cfg.target_path = resolve_path(base_dir, value);
        else if (key == "max_malformed") cfg.load.max_malformed_ratio = parse_real(section, key, value);
        else if (key == "label_properties") cfg.load.label_properties = split_list(value);
        else {
          auto& ext = externals[key];
          ext.name = key;
          ext.path = resolve_path(base_dir, value);
        }
      } else if (section == "prefixes") {
        cfg.load.prefixes.add(key == "_" ? std::string() : key, value);
      } else if (section == "mappings") {
        auto dot = key.find('.');
        if (dot == std::string::npos)
          throw ConfigError(fmt::format("[mappings] key '{}' must be <graph>.<setting>", key));
        auto& ext = externals[key.substr(0, dot)];
        auto setting = key.substr(dot + 1);
        if (setting == "link_property") ext.link_properties = split_list(value);
        else if (setting == "transform.prefix") ext.transform.prefix = value;
        else if (setting == "transform.suffix") ext.transform.suffix = value;
        else if (setting == "transform.space") ext.transform.space_replacement = value;
        else throw ConfigError(fmt::format("[mappings] unknown setting '{}'", key));
      } else if (section == "alignment") {
        if (key == "max_path_length") cfg.align.max_path_length = parse_number<int>(section, key, value);
        else if (key == "sample_cap") cfg.align.sample_cap = parse_number<std::size_t>(section, key, value);
        else if (key == "top_k") cfg.align.top_k = parse_number<std::size_t>(section, key, value);
        else if (key == "similarity_threshold") cfg.align.similarity_threshold = parse_real(section, key, value);
        else if (key == "seed") cfg.align.seed = parse_number<std::uint64_t>(section, key, value);
        else if (key == "threads") cfg.align.threads = parse_number<unsigned>(section, key, value);
        else if (key == "mode") {
          auto m = parse_align_mode(value);
          if (!m) throw ConfigError(fmt::format("[alignment] mode must be hybrid, freq or string, got '{}'", value));
          cfg.align.mode = *m;
        } else if (key == "sampling") {
          if (value == "first") cfg.align.sampling = SamplingMode::FirstN;
          else if (value == "random") cfg.align.sampling = SamplingMode::SeededRandom;
          else throw ConfigError(fmt::format("[alignment] sampling must be first or random, got '{}'", value));
        } else if (key.ends_with(".max_path_length")) {
          path_overrides[key.substr(0, key.size() - std::string_view(".max_path_length").size())] =
              parse_number<int>(section, key, value);
        } else {
          throw ConfigError(fmt::format("[alignment] unknown key '{}'", key));
        }
      } else if (section == "validation") {
        if (key == "constraints") cfg.constraints_path = resolve_path(base_dir, value);
        else if (key == "cutoff_year") cfg.validation.cutoff_year = parse_number<int>(section, key, value);
        else if (key == "depth_cap") cfg.validation.depth_cap = parse_number<int>(section, key, value);
        else if (key == "instance_of") cfg.validation.instance_of = value;
        else if (key == "subclass_of") cfg.validation.subclass_of = value;
        else if (key == "no_value") {
          auto items = split_list(value);
          cfg.no_value_markers = {items.begin(), items.end()};
        } else if (key.starts_with("datatype.")) {
          auto kind = parse_value_kind(value);
          if (!kind) throw ConfigError(fmt::format("[validation] {}: unknown datatype '{}'", key, value));
          cfg.datatypes[key.substr(9)] = *kind;
        } else {
          throw ConfigError(fmt::format("[validation] unknown key '{}'", key));
        }
      } else if (section == "query") {
        if (key == "properties") cfg.properties = split_list(value);
        else if (key == "class") {
          if (!cfg.entity_filter) cfg.entity_filter.emplace();
          cfg.entity_filter->class_id = value;
        } else if (key == "type_property") {
          if (!cfg.entity_filter) cfg.entity_filter.emplace();
          cfg.entity_filter->type_property = value;
        } else {
          throw ConfigError(fmt::format("[query] unknown key '{}'", key));
        }
      } else if (section == "output") {
        if (key == "dir") cfg.output_dir = resolve_path(base_dir, value);
        else if (key == "statements") cfg.statements_file = value;
        else if (key == "report") cfg.report_file = value;
        else {
          throw ConfigError(fmt::format("[output] unknown key '{}'", key));
        }
      } else {
        throw ConfigError(fmt::format("unknown config section [{}]", section));
      }
    }
  }

  if (cfg.entity_filter && cfg.entity_filter->class_id.empty())
    throw ConfigError("[query] type_property given without class");
  for (auto& [name, ext] : externals) {
    if (ext.link_properties.empty())
      throw ConfigError(fmt::format("missing key [mappings] {}.link_property", name));
    if (auto it = path_overrides.find(name); it != path_overrides.end()) ext.max_path_length = it->second;
    cfg.externals.push_back(ext);
  }
  for (const auto& [name, len] : path_overrides)
    if (!externals.contains(name))
      throw ConfigError(fmt::format("[alignment] {}.max_path_length names an unknown graph", name));
  cfg.align.check();
  for (const auto& ext : cfg.externals) cfg.align_for(ext).check();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in, path.parent_path());
}

}  // namespace kgenrich
