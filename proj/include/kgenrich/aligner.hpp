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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgenrich/graph.hpp"

namespace kgenrich {

enum class AlignMode { Hybrid, FrequencyOnly, StringOnly };
enum class SamplingMode { FirstN, SeededRandom };

std::string_view to_string(AlignMode mode);
std::optional<AlignMode> parse_align_mode(std::string_view text);

struct AlignConfig {
  static constexpr int kMaxPathLengthCap = 6;

  int max_path_length = 1;
  std::size_t sample_cap = 200'000;
  std::size_t top_k = 10;
  double similarity_threshold = 0.9;
  AlignMode mode = AlignMode::Hybrid;
  SamplingMode sampling = SamplingMode::FirstN;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  // Throws ConfigError when a field is out of range.
  void check() const;
};

// Forward chain of external properties standing in for one target property.
struct PropertyPath {
  std::vector<std::string> steps;
  std::size_t support = 0;  // known pairs connected by this chain
  double similarity = 0.0;  // against the target property label; set by selection

  // Steps joined by " / ", also the tie-break key.
  std::string to_string() const;
  static PropertyPath parse(std::string_view text);
};

// (external subject, external object or literal) for one known statement.
using KnownPair = std::pair<std::string, Value>;

// Deduplicates and, above cfg.sample_cap, keeps either the first N pairs in
// sorted order or a seeded random N.
std::vector<KnownPair> sample_pairs(std::vector<KnownPair> pairs, const AlignConfig& cfg);

// Whether an external terminal value realizes a known object. Items match by
// id; dates at the coarser of the two precisions; quantities numerically;
// text by content regardless of language tag.
bool terminal_matches(const Value& terminal, const Value& wanted);

// All property sequences of length <= cfg.max_path_length that connect each
// sampled pair along a simple directed path. Support counts distinct pairs per
// sequence. Sorted by support desc, then to_string() asc.
std::vector<PropertyPath> enumerate_paths(const Graph& g, std::vector<KnownPair> pairs,
                                          const AlignConfig& cfg);

// Space-joined normalized labels of the steps.
std::string path_label(const Graph& g, const PropertyPath& path);

struct Alignment {
  std::vector<PropertyPath> ranked;  // input order, similarity filled in
  std::optional<std::size_t> selected;

  const PropertyPath* selected_path() const { return selected ? &ranked[*selected] : nullptr; }
};

// Scores candidates against the target label and applies the selection rule
// of cfg.mode. `candidates` must be in enumerate_paths order.
Alignment score_and_select(std::vector<PropertyPath> candidates, std::string_view target_label,
                           const Graph& g, const AlignConfig& cfg);

std::optional<PropertyPath> select_path(std::vector<PropertyPath> candidates, std::string_view target_label,
                                        const Graph& g, const AlignConfig& cfg);

}  // namespace kgenrich
