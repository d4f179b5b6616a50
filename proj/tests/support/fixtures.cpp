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

#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace kgtest {

using kgenrich::Graph;
using kgenrich::GraphBuilder;
using kgenrich::Value;
using kgenrich::ValueKind;

Graph graph_from(const std::vector<RawEdge>& edges, std::string tag) {
  GraphBuilder b(std::move(tag));
  for (const auto& e : edges) b.add(e.s, e.p, e.o);
  return std::move(b).build();
}

PathFixture random_path_fixture(std::uint64_t seed, std::size_t max_edges, bool acyclic) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::size_t nodes = 20 + pick(120);
  const std::size_t props = 2 + pick(4);
  const std::size_t target_edges = std::min(max_edges, nodes * (1 + pick(6)));

  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  PathFixture f;
  auto node = [](std::size_t i) { return fmt::format("n{}", i); };
  for (std::size_t attempts = 0; seen.size() < target_edges && attempts < target_edges * 20; ++attempts) {
    std::size_t s = pick(nodes), o = pick(nodes), p = pick(props);
    if (s == o) continue;
    if (acyclic && s > o) std::swap(s, o);
    if (seen.emplace(s, p, o).second) f.edges.push_back({node(s), fmt::format("p{}", p), node(o)});
  }

  // Half the pairs come from random walks, so most of them are connected.
  std::multimap<std::string, std::string> out;
  for (const auto& e : f.edges) out.emplace(e.s, e.o);
  while (f.pairs.size() < 40) {
    std::string src = node(pick(nodes));
    if (pick(2) == 0) {
      f.pairs.emplace(src, node(pick(nodes)));
      continue;
    }
    std::string at = src;
    const std::size_t steps = 1 + pick(4);
    for (std::size_t k = 0; k < steps; ++k) {
      auto [lo, hi] = out.equal_range(at);
      if (lo == hi) break;
      auto it = lo;
      std::advance(it, pick(static_cast<std::size_t>(std::distance(lo, hi))));
      at = it->second;
    }
    if (at != src) f.pairs.emplace(src, at);
  }
  return f;
}

namespace {

struct GoldWiring {
  std::string id, label, gold;
  std::vector<std::pair<std::string, std::size_t>> paths;  // step, support
};

std::vector<GoldWiring> gold_wiring() {
  const std::vector<std::string> fillers = {"wikiPageUsesTemplate", "subject", "hypernym", "type", "seeAlso",
                                            "wikiPageWikiLink",     "caption", "name",    "image", "website"};
  std::vector<GoldWiring> w = {
      // Support and label agree.
      {"P452", "industry", "dbp:industry", {{"dbp:industry", 30}, {"dbp:location", 12}}},
      {"P136", "genre", "dbp:genre", {{"dbp:genre", 30}, {"dbp:label", 12}}},
      {"P57", "director", "dbp:director", {{"dbp:director", 30}, {"dbp:producer", 12}}},
      {"P123", "publisher", "dbp:publisher", {{"dbp:publisher", 30}, {"dbp:distributor", 12}}},
      // A weakly named path has the most support.
      {"P30", "continent", "dbp:continent", {{"dbp:location", 30}, {"dbp:continent", 20}}},
      {"P149", "architectural style", "dbp:architecturalStyle",
       {{"dbp:architecture", 30}, {"dbp:architecturalStyle", 20}}},
      {"P27", "country", "dbp:country", {{"dbp:nationality", 30}, {"dbp:country", 20}}},
      // A look-alike label ranks below the top ten.
      {"P161", "cast member", "dbp:starring", {{"dbp:starring", 30}, {"dbp:pastMember", 1}}},
      {"P19", "place of birth", "dbp:birthPlace", {{"dbp:birthPlace", 30}, {"dbp:placeOfBurial", 1}}},
      {"P570", "date of death", "dbp:deathDate", {{"dbp:deathDate", 30}, {"dbp:dateOfBirth", 1}}},
  };
  for (auto& g : w)
    for (std::size_t i = 0; i < fillers.size(); ++i) g.paths.emplace_back("dbp:" + fillers[i], 2 + i);
  return w;
}

}  // namespace

GoldSet alignment_gold_set() {
  GoldSet set;
  GraphBuilder b("gold");
  for (const auto& w : gold_wiring()) {
    GoldProperty p{w.id, w.label, w.gold, {}};
    auto subject = [&](std::size_t k) { return fmt::format("dbr:{}_s{}", w.id, k); };
    auto object = [&](std::size_t k) { return fmt::format("dbr:{}_o{}", w.id, k); };
    for (std::size_t k = 0; k < 30; ++k) p.pairs.emplace_back(subject(k), Value::item(object(k)));
    // Paths with small support start at the far end so they do not all
    // cover the same pairs.
    for (const auto& [step, support] : w.paths)
      for (std::size_t k = 0; k < support; ++k) {
        std::size_t idx = support >= 20 ? k : 29 - k;
        b.add(subject(idx), step, object(idx));
      }
    set.properties.push_back(std::move(p));
  }
  set.external = std::move(b).build();
  return set;
}

ValidatorBatch random_validator_batch(std::uint64_t seed, std::size_t properties, std::size_t per_property) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  ValidatorBatch batch;
  const std::size_t classes = 40, items = 400, subjects = 300;
  auto cls = [](std::size_t i) { return fmt::format("Q{}", 1000 + i); };
  auto item = [](std::size_t i) { return fmt::format("Q{}", 5000 + i); };
  auto subj = [](std::size_t i) { return fmt::format("Q{}", 9000 + i); };

  // Class hierarchy: mostly upward links, a few back edges that close cycles.
  for (std::size_t c = 1; c < classes; ++c) {
    batch.target_edges.push_back({cls(c), "P279", cls(pick(c))});
    if (chance(0.15)) batch.target_edges.push_back({cls(pick(c)), "P279", cls(c)});
  }
  for (std::size_t i = 0; i < items; ++i) {
    const std::size_t types = pick(3);
    for (std::size_t t = 0; t < types; ++t) batch.target_edges.push_back({item(i), "P31", cls(pick(classes))});
    if (chance(0.3)) batch.target_edges.push_back({item(i), "P279", cls(pick(classes))});
  }
  for (std::size_t s = 0; s < subjects; ++s) batch.target_edges.push_back({subj(s), "P31", "Q5"});

  const std::vector<ValueKind> kinds = {ValueKind::ItemRef, ValueKind::ItemRef, ValueKind::Date,
                                        ValueKind::Quantity, ValueKind::String};
  auto random_value = [&](ValueKind kind) -> std::pair<Value, bool> {
    switch (kind) {
      case ValueKind::ItemRef: {
        const auto roll = pick(10);
        if (roll == 0) return {Value::item(fmt::format("Q{}", 80000 + pick(100))), false};  // not in graph
        if (roll == 1) return {Value::item(fmt::format("dbr:Thing_{}", pick(100))), true};  // unresolvable
        return {Value::item(roll == 2 ? cls(pick(classes)) : item(pick(items))), false};
      }
      case ValueKind::Date: {
        const auto year = static_cast<std::int64_t>(1800 + pick(300));
        return {chance(0.5) ? Value::date(kgenrich::Date::of_year(year))
                            : Value::date(kgenrich::Date::of_day(year, 1 + static_cast<int>(pick(12)),
                                                                 1 + static_cast<int>(pick(28)))),
                false};
      }
      case ValueKind::Quantity:
        return {Value::quantity(std::to_string(pick(100000))), false};
      case ValueKind::MonolingualText:
        return {Value::text(fmt::format("text {}", pick(50)), "en"), false};
      case ValueKind::String:
        return {Value::string(fmt::format("s{}", pick(50))), false};
      case ValueKind::Other:
        break;
    }
    return {Value::other(std::to_string(pick(10)), "dt"), false};
  };

  for (std::size_t pi = 0; pi < properties; ++pi) {
    const std::string prop = fmt::format("P{}", 100 + pi);
    batch.properties.push_back(prop);
    const ValueKind expected = kinds[pi % kinds.size()];
    batch.expected[prop] = expected;

    auto& known = batch.known[prop];
    for (int k = 0; k < 6; ++k) known.emplace_back(subj(pick(subjects)), random_value(expected).first);
    known.emplace_back(subj(pick(subjects)), random_value(kinds[(pi + 2) % kinds.size()]).first);
    for (const auto& [s, o] : known) batch.target_edges.push_back({s, prop, kgenrich::encode_value(o)});

    if (expected == ValueKind::ItemRef || pi % 4 == 1) {
      kgenrich::ValueTypeConstraint c;
      c.property = prop;
      const std::size_t allowed = 1 + pick(3);
      for (std::size_t a = 0; a < allowed; ++a) c.allowed_classes.insert(cls(pick(classes)));
      c.mode = static_cast<kgenrich::RelationMode>(pick(3));
      for (std::size_t e = 0; e < 1 + pick(5); ++e) c.exceptions.insert(subj(pick(subjects)));
      batch.constraints[prop] = std::move(c);
    }

    auto& cands = batch.candidates[prop];
    for (std::size_t i = 0; i < per_property; ++i) {
      kgenrich::CandidateStatement c;
      c.subject = subj(pick(subjects));
      c.property = prop;
      const ValueKind kind = chance(0.6) ? expected : kinds[pick(kinds.size())];
      auto [v, unresolvable] = random_value(chance(0.05) ? ValueKind::MonolingualText : kind);
      c.object = v;
      c.external_object = unresolvable ? v : Value::item(fmt::format("dbr:X{}", pick(1000)));
      c.unresolvable = unresolvable;
      c.source_graph = "random";
      cands.push_back(std::move(c));
    }
  }

  // The graph is built from edge-TSV text so that known literal objects get
  // the same decoding as loaded data.
  GraphBuilder b("target");
  for (const auto& e : batch.target_edges) {
    auto v = kgenrich::decode_value(e.o);
    if (!v) throw std::logic_error("fixture produced an undecodable value: " + e.o);
    b.add(e.s, e.p, *v);
  }
  batch.target = std::move(b).build();
  return batch;
}

OracleVerdict validator_oracle(const ValidatorBatch& batch, const kgenrich::CandidateStatement& c, int depth_cap,
                               int cutoff_year) {
  std::multimap<std::string, std::string> instance_of, subclass_of;
  std::set<std::string> nodes;
  for (const auto& e : batch.target_edges) {
    nodes.insert(e.s);
    nodes.insert(e.p);
    if (auto v = kgenrich::decode_value(e.o); v && v->is_item()) nodes.insert(e.o);
    if (e.p == "P31") instance_of.emplace(e.s, e.o);
    if (e.p == "P279") subclass_of.emplace(e.s, e.o);
  }

  OracleVerdict v;
  const ValueKind expected = batch.expected.at(c.property);
  v.datatype = c.object.kind() == expected && !(c.object.is_item() && c.unresolvable);
  const auto* d = c.object.as_date();
  v.range = d == nullptr || d->year < cutoff_year;

  auto it = batch.constraints.find(c.property);
  if (it == batch.constraints.end() || !c.object.is_item() || it->second.exceptions.contains(c.subject)) {
    v.value_type = true;
    return v;
  }
  const auto& vc = it->second;
  const std::string& o = c.object.id();
  if (c.unresolvable || !nodes.contains(o)) return v;
  auto via = [&](const std::multimap<std::string, std::string>& rel) {
    auto [lo, hi] = rel.equal_range(o);
    for (auto t = lo; t != hi; ++t)
      if (reaches(subclass_of, t->second, vc.allowed_classes, depth_cap)) return true;
    return false;
  };
  using kgenrich::RelationMode;
  v.value_type = (vc.mode != RelationMode::SubclassOf && via(instance_of)) ||
                 (vc.mode != RelationMode::InstanceOf && via(subclass_of));
  return v;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string date_of(std::size_t k, std::size_t i) {
  return fmt::format("{:04}-{:02}-{:02}", 1900 + (k * 7 + i * 13) % 100, 1 + (k + i) % 12, 1 + (k * 3 + i) % 28);
}

}  // namespace

std::filesystem::path write_pipeline_fixture(const std::filesystem::path& dir, const PipelineFixtureSpec& spec) {
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::size_t values = 200;

  auto entity = [](std::size_t k) { return fmt::format("Q{}", 10000 + k); };
  auto value = [](std::size_t j) { return fmt::format("Q{}", 50000 + j); };
  auto property = [](std::size_t i) { return fmt::format("P{}", 2000 + i); };
  auto has_counterpart = [](std::size_t i) { return i % 4 != 3; };
  auto is_date = [&](std::size_t i) { return i % 3 == 2 && has_counterpart(i); };
  auto link_property = [](std::size_t g) { return g == 0 ? std::string("sitelink") : fmt::format("P{}", 1950 + g); };
  auto value_of = [&](std::size_t k, std::size_t i) { return (k * 7 + i * 11) % values; };

  {
    auto out = open_out(dir / "target.tsv");
    out << "node1\tlabel\tnode2\n";
    out << "Q900\tlabel\t'thing class'@en\nQ905\tP279\tQ900\n";
    for (std::size_t i = 0; i < spec.properties; ++i)
      out << property(i) << "\tlabel\t'" << (is_date(i) ? "date field " : "related item ") << i << "'@en\n";
    for (std::size_t k = 0; k < spec.entities; ++k) {
      out << entity(k) << "\tP31\tQ5\n" << entity(k) << "\tlabel\t'Entity " << k << "'@en\n";
      for (std::size_t g = 0; g < spec.external_graphs; ++g)
        out << entity(k) << '\t' << link_property(g) << "\t\"Ent_" << k << "\"\n";
    }
    for (std::size_t j = 0; j < values; ++j) {
      // One value in ten is typed outside the allowed classes.
      out << value(j) << "\tP31\t" << (j % 10 == 9 ? "Q904" : j % 2 ? "Q905" : "Q900") << '\n';
      for (std::size_t g = 0; g < spec.external_graphs; ++g)
        out << value(j) << '\t' << link_property(g) << "\t\"Val_" << j << "\"\n";
    }
    for (std::size_t i = 0; i < spec.properties; ++i)
      for (std::size_t k = 0; k < spec.entities; ++k) {
        if ((k * 31 + i * 17) % 10 >= 7) continue;  // gap
        out << entity(k) << '\t' << property(i) << '\t';
        if (!has_counterpart(i)) out << 7000000 + k * 100 + i << '\n';
        else out << (is_date(i) ? date_of(k, i) : value(value_of(k, i))) << '\n';
      }
  }
  {
    auto out = open_out(dir / "constraints.tsv");
    out << "property\tallowed_class\n";
    for (std::size_t i = 0; i < spec.properties; ++i)
      if (!is_date(i) && has_counterpart(i)) out << property(i) << "\tQ900\n";
  }

  for (std::size_t g = 0; g < spec.external_graphs; ++g) {
    const std::string ns = fmt::format("http://example.org/g{}/", g);
    const std::string pns = ns + "prop/";
    auto out = open_out(dir / fmt::format("external{}.nt", g));
    std::size_t written = 0;
    auto edge = [&](const std::string& s, const std::string& p, const std::string& o) {
      out << '<' << ns << s << "> <" << pns << p << "> " << o << " .\n";
      ++written;
    };
    auto node = [&](const std::string& local) { return '<' + ns + local + '>'; };
    for (std::size_t k = 0; k < spec.entities; ++k) {
      const std::string ent = fmt::format("Ent_{}", k);
      edge(ent, "detail", node(ent + "_d"));
      for (std::size_t i = 0; i < spec.properties; ++i) {
        if (!has_counterpart(i)) continue;
        // Odd properties sit one hop further away, behind the detail node.
        const std::string subject = i % 2 ? ent + "_d" : ent;
        const bool noisy = pick(10) == 0;
        const std::size_t v = noisy ? pick(values) : value_of(k, i);
        const std::string step = fmt::format("field{}", i);
        if (is_date(i))
          edge(subject, step,
               fmt::format("\"{}\"^^<http://www.w3.org/2001/XMLSchema#date>",
                           noisy ? date_of(k + 1, i) : date_of(k, i)));
        else
          edge(subject, step, node(fmt::format("Val_{}", v)));
      }
    }
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, bool>> padding;
    while (written < spec.external_edges) {
      const std::size_t s = pick(spec.entities * 2), p = pick(10);
      const bool to_entity = pick(3) == 0;
      const std::size_t o = to_entity ? pick(spec.entities) : pick(spec.entities * 2);
      if (!padding.emplace(s, p, o, to_entity).second) continue;
      edge(fmt::format("Pad_{}", s), fmt::format("misc{}", p),
           node((to_entity ? "Ent_" : "Pad_") + std::to_string(o)));
    }
  }

  const auto config = dir / "pipeline.ini";
  auto out = open_out(config);
  out << "[graphs]\ntarget = target.tsv\n";
  for (std::size_t g = 0; g < spec.external_graphs; ++g) out << "ext" << g << " = external" << g << ".nt\n";
  out << "\n[prefixes]\n";
  for (std::size_t g = 0; g < spec.external_graphs; ++g)
    out << "g" << g << " = http://example.org/g" << g << "/\n"
        << "g" << g << "p = http://example.org/g" << g << "/prop/\n";
  out << "\n[mappings]\n";
  for (std::size_t g = 0; g < spec.external_graphs; ++g)
    out << "ext" << g << ".link_property = " << link_property(g) << "\next" << g << ".transform.prefix = g" << g
        << ":\n";
  out << "\n[alignment]\nmax_path_length = " << spec.max_path_length << "\n\n[validation]\nconstraints = constraints.tsv\n";
  out << "\n[query]\nproperties = ";
  for (std::size_t i = 0; i < spec.properties; ++i) out << (i ? "," : "") << property(i);
  out << "\nclass = Q5\n\n[output]\ndir = out\n";
  return config;
}

std::string run_violation(const kgenrich::PropertyRun& run) {
  const auto& gp = run.gaps;
  for (const auto& s : gp.known_subjects)
    if (gp.unknown_subjects.contains(s)) return "subject in both E_w and E_u: " + s;
  std::set<std::tuple<std::string, std::string, Value>> candidates;
  for (const auto& c : run.candidates) candidates.emplace(c.subject, c.property, c.object);
  for (const auto& st : run.validation.accepted) {
    if (!candidates.contains({st.subject, st.property, st.object}))
      return "accepted statement not among candidates: " + st.subject;
    if (gp.known_subjects.contains(st.subject)) return "emitted subject already has a value: " + st.subject;
  }
  if (run.result.s_e > run.result.s_g) return "s_e exceeds s_g";
  return {};
}

std::string batch_violation(const Graph& target, const kgenrich::BatchResult& batch,
                            const std::optional<kgenrich::EntityFilter>& filter) {
  std::map<std::string, kgenrich::GapPartition> gaps;
  for (const auto& st : batch.statements) {
    auto it = gaps.find(st.property);
    if (it == gaps.end()) it = gaps.emplace(st.property, kgenrich::detect_gaps(target, st.property, filter)).first;
    if (it->second.known_subjects.contains(st.subject))
      return fmt::format("emitted {} {} but the subject already has a value", st.subject, st.property);
    if (!it->second.unknown_subjects.contains(st.subject))
      return fmt::format("emitted {} {} outside the entity set", st.subject, st.property);
  }
  return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("kgenrich-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace kgtest
