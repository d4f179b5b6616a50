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

#include "kgenrich/aligner.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "kgenrich/error.hpp"
#include "kgenrich/similarity.hpp"

namespace kgenrich {

namespace {

using Sequence = std::vector<TermId>;
using SupportMap = std::map<Sequence, std::size_t>;

bool is_text(ValueKind k) { return k == ValueKind::String || k == ValueKind::MonolingualText; }

// Per-pair depth-first search over simple paths. The backward distance map
// prunes branches that can no longer reach an item target in time.
class PathSearch {
 public:
  PathSearch(const Graph& g, int max_len) : g_(g), max_len_(max_len) {}

  void run(TermId start, const Value& wanted, std::set<Sequence>& found) {
    found_ = &found;
    wanted_ = &wanted;
    target_.reset();
    dist_.clear();
    if (wanted.is_item()) {
      target_ = g_.find_node(wanted.id());
      if (!target_) return;
      compute_distances();
    }
    on_path_.assign(1, start);
    seq_.clear();
    dfs(start);
  }

 private:
  void compute_distances() {
    dist_[*target_] = 0;
    std::vector<TermId> frontier{*target_};
    for (int d = 1; d < max_len_ && !frontier.empty(); ++d) {
      std::vector<TermId> next;
      for (TermId v : frontier)
        for (const Edge& e : g_.in_edges(v))
          if (dist_.try_emplace(e.subject, d).second) next.push_back(e.subject);
      frontier = std::move(next);
    }
  }

  bool visited(TermId v) const { return std::find(on_path_.begin(), on_path_.end(), v) != on_path_.end(); }

  void dfs(TermId u) {
    const int depth = static_cast<int>(seq_.size());
    for (const Edge& e : g_.out_edges(u)) {
      const TermId v = e.object;
      if (visited(v)) continue;
      const Value& term = g_.term(v);
      seq_.push_back(e.property);
      if (target_ ? v == *target_ : terminal_matches(term, *wanted_)) {
        found_->insert(seq_);
      } else if (term.is_item() && depth + 1 < max_len_) {
        bool reachable = true;
        if (target_) {
          auto it = dist_.find(v);
          reachable = it != dist_.end() && it->second <= max_len_ - depth - 1;
        }
        if (reachable) {
          on_path_.push_back(v);
          dfs(v);
          on_path_.pop_back();
        }
      }
      seq_.pop_back();
    }
  }

  const Graph& g_;
  int max_len_;
  std::set<Sequence>* found_ = nullptr;
  const Value* wanted_ = nullptr;
  std::optional<TermId> target_;
  std::unordered_map<TermId, int> dist_;
  std::vector<TermId> on_path_;
  Sequence seq_;
};

void count_range(const Graph& g, const std::vector<KnownPair>& pairs, std::size_t lo, std::size_t hi,
                 int max_len, SupportMap& support) {
  PathSearch search(g, max_len);
  std::set<Sequence> found;
  for (std::size_t i = lo; i < hi; ++i) {
    auto start = g.find_node(pairs[i].first);
    if (!start) continue;
    found.clear();
    search.run(*start, pairs[i].second, found);
    for (const auto& seq : found) ++support[seq];
  }
}

}  // namespace

std::string_view to_string(AlignMode mode) {
  switch (mode) {
    case AlignMode::Hybrid: return "hybrid";
    case AlignMode::FrequencyOnly: return "freq";
    case AlignMode::StringOnly: return "string";
  }
  return "hybrid";
}

std::optional<AlignMode> parse_align_mode(std::string_view text) {
  if (text == "hybrid") return AlignMode::Hybrid;
  if (text == "freq" || text == "frequency") return AlignMode::FrequencyOnly;
  if (text == "string") return AlignMode::StringOnly;
  return std::nullopt;
}

void AlignConfig::check() const {
  if (max_path_length < 1 || max_path_length > kMaxPathLengthCap)
    throw ConfigError(fmt::format("max path length must be in [1, {}], got {}", kMaxPathLengthCap, max_path_length));
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
    throw ConfigError(fmt::format("similarity threshold must be in [0, 1], got {}", similarity_threshold));
  if (sample_cap == 0) throw ConfigError("sample cap must be positive");
  if (top_k == 0) throw ConfigError("top_k must be positive");
}

std::string PropertyPath::to_string() const {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += " / ";
    out += s;
  }
  return out;
}

PropertyPath PropertyPath::parse(std::string_view text) {
  PropertyPath p;
  for (;;) {
    auto sep = text.find(" / ");
    auto step = text.substr(0, sep);
    while (!step.empty() && step.front() == ' ') step.remove_prefix(1);
    while (!step.empty() && step.back() == ' ') step.remove_suffix(1);
    if (!step.empty()) p.steps.emplace_back(step);
    if (sep == std::string_view::npos) break;
    text.remove_prefix(sep + 3);
  }
  return p;
}

std::vector<KnownPair> sample_pairs(std::vector<KnownPair> pairs, const AlignConfig& cfg) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.size() <= cfg.sample_cap) return pairs;
  if (cfg.sampling == SamplingMode::SeededRandom) {
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(cfg.sample_cap);
    std::sort(pairs.begin(), pairs.end());
  } else {
    pairs.resize(cfg.sample_cap);
  }
  return pairs;
}

bool terminal_matches(const Value& terminal, const Value& wanted) {
  const ValueKind tk = terminal.kind();
  const ValueKind wk = wanted.kind();
  if (tk == ValueKind::Date && wk == ValueKind::Date) {
    const Date& a = *terminal.as_date();
    const Date& b = *wanted.as_date();
    auto p = std::min(a.precision, b.precision);
    return a.truncated(p) == b.truncated(p);
  }
  if (tk == ValueKind::Quantity && wk == ValueKind::Quantity)
    return terminal.as_quantity()->numeric() == wanted.as_quantity()->numeric();
  if (is_text(tk) && is_text(wk)) return terminal.lexical() == wanted.lexical();
  return terminal == wanted;
}

std::vector<PropertyPath> enumerate_paths(const Graph& g, std::vector<KnownPair> pairs, const AlignConfig& cfg) {
  cfg.check();
  pairs = sample_pairs(std::move(pairs), cfg);

  SupportMap support;
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(pairs.size())));
  if (threads <= 1) {
    count_range(g, pairs, 0, pairs.size(), cfg.max_path_length, support);
  } else {
    std::vector<SupportMap> partial(threads);
    {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (pairs.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(pairs.size(), lo + chunk);
        workers.emplace_back([&, lo, hi, t] { count_range(g, pairs, lo, hi, cfg.max_path_length, partial[t]); });
      }
    }
    for (const auto& part : partial)
      for (const auto& [seq, n] : part) support[seq] += n;
  }

  std::vector<PropertyPath> out;
  out.reserve(support.size());
  for (const auto& [seq, n] : support) {
    PropertyPath p;
    for (TermId t : seq) p.steps.push_back(g.term(t).id());
    p.support = n;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const PropertyPath& a, const PropertyPath& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.to_string() < b.to_string();
  });
  return out;
}

std::string path_label(const Graph& g, const PropertyPath& path) {
  std::string out;
  for (const auto& step : path.steps) {
    auto label = normalize_label(g.label_of(step).value_or(step));
    if (label.empty()) continue;
    if (!out.empty()) out += ' ';
    out += label;
  }
  return out;
}

Alignment score_and_select(std::vector<PropertyPath> candidates, std::string_view target_label, const Graph& g,
                           const AlignConfig& cfg) {
  Alignment a;
  a.ranked = std::move(candidates);
  if (a.ranked.empty()) return a;

  const std::string target = normalize_label(target_label);
  for (auto& p : a.ranked) p.similarity = gestalt_similarity(target, path_label(g, p));

  auto most_similar = [&](std::size_t limit) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < limit; ++i)
      if (a.ranked[i].similarity > a.ranked[best].similarity) best = i;
    return best;
  };

  switch (cfg.mode) {
    case AlignMode::FrequencyOnly:
      a.selected = 0;
      break;
    case AlignMode::StringOnly:
      a.selected = most_similar(a.ranked.size());
      break;
    case AlignMode::Hybrid: {
      std::size_t best = most_similar(std::min(cfg.top_k, a.ranked.size()));
      a.selected = a.ranked[best].similarity >= cfg.similarity_threshold ? best : 0;
      break;
    }
  }
  return a;
}

std::optional<PropertyPath> select_path(std::vector<PropertyPath> candidates, std::string_view target_label,
                                        const Graph& g, const AlignConfig& cfg) {
  auto a = score_and_select(std::move(candidates), target_label, g, cfg);
  if (!a.selected) return std::nullopt;
  return a.ranked[*a.selected];
}

}  // namespace kgenrich
