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

#include <doctest.h>
#include <fmt/format.h>

#include "fixtures.hpp"
#include "kgenrich/aligner.hpp"
#include "kgenrich/error.hpp"

using namespace kgenrich;

namespace {

std::map<std::vector<std::string>, std::size_t> as_map(const std::vector<PropertyPath>& paths) {
  std::map<std::vector<std::string>, std::size_t> out;
  for (const auto& p : paths) out[p.steps] = p.support;
  return out;
}

AlignConfig with_length(int l) {
  AlignConfig cfg;
  cfg.max_path_length = l;
  return cfg;
}

// Paths with the given support, in enumerate_paths order.
std::vector<PropertyPath> ranked(std::vector<std::pair<std::string, std::size_t>> spec) {
  std::vector<PropertyPath> out;
  for (auto& [step, support] : spec) out.push_back({{step}, support, 0.0});
  return out;
}

}  // namespace

TEST_SUITE("aligner") {
  TEST_CASE("single edge path") {
    GraphBuilder b("dbpedia");
    b.add("dbr:A", "dbp:industry", "dbr:X");
    b.add("dbr:A", "dbp:location", "dbr:Y");
    auto g = std::move(b).build();
    auto paths = enumerate_paths(g, {{"dbr:A", Value::item("dbr:X")}}, with_length(1));
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].steps == std::vector<std::string>{"dbp:industry"});
    CHECK(paths[0].support == 1);
  }

  TEST_CASE("no connecting edges") {
    GraphBuilder b("dbpedia");
    b.add("dbr:A", "dbp:industry", "dbr:X");
    auto g = std::move(b).build();
    CHECK(enumerate_paths(g, {{"dbr:A", Value::item("dbr:Z")}}, with_length(3)).empty());
    CHECK(enumerate_paths(g, {{"dbr:Q", Value::item("dbr:X")}}, with_length(3)).empty());
  }

  TEST_CASE("four-step chain through agent and biography nodes") {
    GraphBuilder b("getty");
    const std::size_t wired = 7;
    for (std::size_t i = 0; i < wired; ++i) {
      const auto person = fmt::format("ulan:{}", 500000 + i);
      b.add(person, "foaf:focus", fmt::format("ulan:{}-agent", 500000 + i));
      b.add(fmt::format("ulan:{}-agent", 500000 + i), "gvp:biographyPreferred", fmt::format("ulan:bio{}", i));
      b.add(fmt::format("ulan:bio{}", i), "schema:birthPlace", fmt::format("tgn:place{}", i));
      b.add(fmt::format("tgn:place{}", i), "skos:exactMatch", fmt::format("tgn:{}", 7000000 + i));
    }
    b.add("ulan:500000", "gvp:related", "ulan:500001");
    auto g = std::move(b).build();
    std::vector<KnownPair> pairs;
    for (std::size_t i = 0; i < wired; ++i)
      pairs.emplace_back(fmt::format("ulan:{}", 500000 + i), Value::item(fmt::format("tgn:{}", 7000000 + i)));
    pairs.emplace_back("ulan:599999", Value::item("tgn:1"));

    auto paths = enumerate_paths(g, pairs, with_length(4));
    REQUIRE_FALSE(paths.empty());
    CHECK(paths[0].to_string() == "foaf:focus / gvp:biographyPreferred / schema:birthPlace / skos:exactMatch");
    CHECK(paths[0].support == wired);
    CHECK(enumerate_paths(g, pairs, with_length(3)).empty());
  }

  TEST_CASE("literal terminals") {
    CHECK(terminal_matches(Value::date(Date::of_day(1885, 1, 1)), Value::date(Date::of_year(1885))));
    CHECK_FALSE(terminal_matches(Value::date(Date::of_day(1885, 1, 1)), Value::date(Date::of_day(1885, 1, 2))));
    CHECK(terminal_matches(Value::quantity("4000000.0"), Value::quantity("4000000")));
    CHECK(terminal_matches(Value::text("Left back", "en"), Value::string("Left back")));
    CHECK_FALSE(terminal_matches(Value::item("Q1"), Value::string("Q1")));

    GraphBuilder b("dbpedia");
    b.add("dbr:A", "dbp:birthDate", Value::date(Date::of_day(1900, 3, 1)));
    b.add("dbr:B", "dbp:birthDate", Value::date(Date::of_year(1901)));
    auto g = std::move(b).build();
    auto paths = enumerate_paths(
        g, {{"dbr:A", Value::date(Date::of_year(1900))}, {"dbr:B", Value::date(Date::of_day(1901, 6, 6))}},
        with_length(1));
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].support == 2);
  }

  TEST_CASE("support counts match exhaustive search on small graphs") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      auto f = kgtest::random_path_fixture(seed, 300, seed % 2 == 0);
      auto g = kgtest::graph_from(f.edges);
      std::vector<KnownPair> pairs;
      for (const auto& [s, o] : f.pairs) pairs.emplace_back(s, Value::item(o));
      for (int l = 1; l <= 3; ++l) {
        CAPTURE(seed);
        CAPTURE(l);
        CHECK(as_map(enumerate_paths(g, pairs, with_length(l))) == kgtest::path_support(f.edges, f.pairs, l));
      }
    }
  }

  TEST_CASE("threaded enumeration equals sequential") {
    auto f = kgtest::random_path_fixture(42, 800, false);
    auto g = kgtest::graph_from(f.edges);
    std::vector<KnownPair> pairs;
    for (const auto& [s, o] : f.pairs) pairs.emplace_back(s, Value::item(o));
    auto cfg = with_length(3);
    auto seq = enumerate_paths(g, pairs, cfg);
    cfg.threads = 4;
    auto par = enumerate_paths(g, pairs, cfg);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      CHECK(seq[i].steps == par[i].steps);
      CHECK(seq[i].support == par[i].support);
    }
  }

  TEST_CASE("ordering is support then path text") {
    auto f = kgtest::random_path_fixture(5, 500, false);
    auto g = kgtest::graph_from(f.edges);
    std::vector<KnownPair> pairs;
    for (const auto& [s, o] : f.pairs) pairs.emplace_back(s, Value::item(o));
    auto paths = enumerate_paths(g, pairs, with_length(3));
    for (std::size_t i = 1; i < paths.size(); ++i) {
      const auto& a = paths[i - 1];
      const auto& b = paths[i];
      CHECK((a.support > b.support || (a.support == b.support && a.to_string() < b.to_string())));
    }
  }

  TEST_CASE("sampling") {
    std::vector<KnownPair> pairs;
    for (int i = 9; i >= 0; --i) pairs.emplace_back(fmt::format("s{}", i), Value::item("o"));
    pairs.push_back(pairs.front());
    AlignConfig cfg;
    cfg.sample_cap = 3;
    auto first = sample_pairs(pairs, cfg);
    REQUIRE(first.size() == 3);
    CHECK(first[0].first == "s0");
    CHECK(first[2].first == "s2");
    cfg.sampling = SamplingMode::SeededRandom;
    cfg.seed = 11;
    CHECK(sample_pairs(pairs, cfg) == sample_pairs(pairs, cfg));
    cfg.sample_cap = 100;
    CHECK(sample_pairs(pairs, cfg).size() == 10);
  }

  TEST_CASE("string similarity reranks the top ten") {
    GraphBuilder b("dbpedia");
    b.add("dbp:architecture", "rdfs:comment", Value::string("x"));
    auto g = std::move(b).build();
    auto cands = ranked({{"dbp:architecture", 40}, {"dbp:location", 30}, {"dbp:architecturalStyle", 12}});
    AlignConfig cfg;
    auto a = score_and_select(cands, "architectural style", g, cfg);
    REQUIRE(a.selected_path());
    CHECK(a.selected_path()->steps[0] == "dbp:architecturalStyle");
    CHECK(a.selected_path()->similarity == 1.0);
    cfg.mode = AlignMode::FrequencyOnly;
    CHECK(select_path(cands, "architectural style", g, cfg)->steps[0] == "dbp:architecture");
  }

  TEST_CASE("continent and cast member") {
    GraphBuilder b("dbpedia");
    b.add("dbr:x", "dbp:y", "dbr:z");
    auto g = std::move(b).build();
    AlignConfig cfg;

    auto continent = ranked({{"dbp:location", 50}, {"dbp:country", 30}, {"dbp:continent", 20}});
    CHECK(select_path(continent, "continent", g, cfg)->steps[0] == "dbp:continent");
    cfg.mode = AlignMode::FrequencyOnly;
    CHECK(select_path(continent, "continent", g, cfg)->steps[0] == "dbp:location");

    // pastMember is ranked 12th, outside the window the hybrid rule looks at.
    std::vector<std::pair<std::string, std::size_t>> spec = {{"dbp:starring", 100}};
    for (int i = 0; i < 10; ++i) spec.emplace_back(fmt::format("dbp:filler{}", i), 90 - i);
    spec.emplace_back("dbp:pastMember", 3);
    auto cast = ranked(spec);
    cfg.mode = AlignMode::StringOnly;
    CHECK(select_path(cast, "cast member", g, cfg)->steps[0] == "dbp:pastMember");
    cfg.mode = AlignMode::Hybrid;
    CHECK(select_path(cast, "cast member", g, cfg)->steps[0] == "dbp:starring");
  }

  TEST_CASE("hybrid equals frequency-only when nothing clears the threshold") {
    GraphBuilder b("dbpedia");
    b.add("dbr:x", "dbp:y", "dbr:z");
    auto g = std::move(b).build();
    auto cands = ranked({{"dbp:alpha", 9}, {"dbp:beta", 8}, {"dbp:gamma", 7}, {"dbp:delta", 6}});
    for (auto label : {"omega", "alphabet soup", "beta blocker"}) {
      AlignConfig hybrid, freq;
      freq.mode = AlignMode::FrequencyOnly;
      CHECK(select_path(cands, label, g, hybrid)->steps == select_path(cands, label, g, freq)->steps);
    }
    CHECK_FALSE(select_path({}, "omega", g, AlignConfig{}));
  }

  TEST_CASE("labels come from label edges when present") {
    GraphBuilder b("dbpedia");
    b.add("dbp:p1", "rdfs:label", Value::text("continent", "en"));
    auto g = std::move(b).build();
    CHECK(path_label(g, PropertyPath{{"dbp:p1"}, 1, 0}) == "continent");
    CHECK(path_label(g, PropertyPath{{"foaf:focus", "gvp:biographyPreferred"}, 1, 0}) == "focus biography preferred");
  }

  TEST_CASE("config bounds") {
    AlignConfig cfg;
    cfg.max_path_length = 0;
    CHECK_THROWS_AS(cfg.check(), ConfigError);
    cfg.max_path_length = 7;
    CHECK_THROWS_AS(cfg.check(), ConfigError);
    cfg.max_path_length = 6;
    CHECK_NOTHROW(cfg.check());
    cfg.similarity_threshold = 1.5;
    CHECK_THROWS_AS(cfg.check(), ConfigError);
  }

  TEST_CASE("path text round trip") {
    auto p = PropertyPath::parse("foaf:focus / gvp:biographyPreferred");
    CHECK(p.steps == std::vector<std::string>{"foaf:focus", "gvp:biographyPreferred"});
    CHECK(p.to_string() == "foaf:focus / gvp:biographyPreferred");
    CHECK(parse_align_mode("freq") == AlignMode::FrequencyOnly);
    CHECK_FALSE(parse_align_mode("magic"));
  }
}
