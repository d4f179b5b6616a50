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

#include "kgenrich/retriever.hpp"

using namespace kgenrich;

namespace {

Graph external() {
  GraphBuilder b("dbpedia");
  b.add("dbr:WOWIO", "dbp:industry", "dbr:E-book");
  b.add("dbr:WOWIO", "dbp:founded", Value::date(Date::of_year(2006)));
  b.add("dbr:WOWIO_Inc", "dbp:industry", "dbr:E-book");
  b.add("dbr:Acme", "dbp:industry", "dbr:Unlinked_Thing");
  b.add("dbr:Acme", "dbp:industry", "dbr:Shared");
  b.add("ulan:500", "foaf:focus", "ulan:500-agent");
  b.add("ulan:500-agent", "gvp:biographyPreferred", "ulan:bio500");
  b.add("ulan:bio500", "schema:birthPlace", "tgn:place1");
  b.add("tgn:place1", "skos:exactMatch", "tgn:7001");
  b.add("dbr:Lit", "dbp:hop", Value::string("dead end"));
  return std::move(b).build();
}

EntityMapping mapping() {
  EntityMapping m;
  m.add("Q100", "dbr:WOWIO");
  m.add("Q100", "dbr:WOWIO_Inc");
  m.add("Q101", "dbr:Acme");
  m.add("Q200", "dbr:E-book");
  m.add("Q7", "dbr:Shared");
  m.add("Q8", "dbr:Shared");
  return m;
}

const PropertyPath kIndustry{{"dbp:industry"}, 1, 0};

}  // namespace

TEST_SUITE("retriever") {
  TEST_CASE("follow a one-step path") {
    auto g = external();
    CHECK(follow_path(g, "dbr:WOWIO", kIndustry) == std::vector{Value::item("dbr:E-book")});
    CHECK(follow_path(g, "dbr:Nobody", kIndustry).empty());
  }

  TEST_CASE("follow the four-step chain") {
    auto g = external();
    auto path = PropertyPath::parse("foaf:focus / gvp:biographyPreferred / schema:birthPlace / skos:exactMatch");
    CHECK(follow_path(g, "ulan:500", path) == std::vector{Value::item("tgn:7001")});
  }

  TEST_CASE("literals end a branch before the last step") {
    auto g = external();
    CHECK(follow_path(g, "dbr:Lit", PropertyPath::parse("dbp:hop / dbp:more")).empty());
    CHECK(follow_path(g, "dbr:Lit", PropertyPath::parse("dbp:hop")) == std::vector{Value::string("dead end")});
  }

  TEST_CASE("unique resolution and duplicate merge") {
    auto g = external();
    auto m = mapping();
    auto c = retrieve(g, {{"Q100", {"dbr:WOWIO", "dbr:WOWIO_Inc"}}}, kIndustry, m, "P452");
    REQUIRE(c.size() == 1);
    CHECK(c[0].subject == "Q100");
    CHECK(c[0].property == "P452");
    CHECK(c[0].object == Value::item("Q200"));
    CHECK(c[0].external_object == Value::item("dbr:E-book"));
    CHECK_FALSE(c[0].ambiguous);
    CHECK_FALSE(c[0].unresolvable);
    CHECK(c[0].provenance == Provenance::ExternalCandidate);
    CHECK(c[0].path == std::vector<std::string>{"dbp:industry"});
  }

  TEST_CASE("unresolvable and ambiguous terminals") {
    auto g = external();
    auto c = retrieve(g, {{"Q101", {"dbr:Acme"}}}, kIndustry, mapping(), "P452");
    REQUIRE(c.size() == 3);
    std::size_t ambiguous = 0, unresolvable = 0;
    for (const auto& x : c) {
      CHECK(x.subject == "Q101");
      if (x.ambiguous) ++ambiguous;
      if (x.unresolvable) {
        ++unresolvable;
        CHECK(x.object == Value::item("dbr:Unlinked_Thing"));
      }
    }
    CHECK(ambiguous == 2);
    CHECK(unresolvable == 1);
  }

  TEST_CASE("literal terminals are kept") {
    auto g = external();
    auto c = retrieve(g, {{"Q100", {"dbr:WOWIO"}}}, PropertyPath::parse("dbp:founded"), mapping(), "P571");
    REQUIRE(c.size() == 1);
    CHECK(c[0].object == Value::date(Date::of_year(2006)));
    CHECK_FALSE(c[0].unresolvable);
  }

  TEST_CASE("repeat runs agree and subjects stay within the request") {
    auto g = external();
    NodeSetMap unknowns = {{"Q100", {"dbr:WOWIO", "dbr:WOWIO_Inc"}}, {"Q101", {"dbr:Acme"}}, {"Q102", {}}};
    auto a = retrieve(g, unknowns, kIndustry, mapping(), "P452");
    auto b = retrieve(g, unknowns, kIndustry, mapping(), "P452");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].subject == b[i].subject);
      CHECK(a[i].object == b[i].object);
      CHECK(unknowns.contains(a[i].subject));
    }
  }
}
