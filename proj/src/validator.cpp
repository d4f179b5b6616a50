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

#include "kgenrich/validator.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "kgenrich/error.hpp"
#include "load_common.hpp"

namespace kgenrich {

namespace {

// Lower rank wins ties.
int precedence(ValueKind k) {
  switch (k) {
    case ValueKind::ItemRef: return 0;
    case ValueKind::Date: return 1;
    case ValueKind::Quantity: return 2;
    case ValueKind::MonolingualText: return 3;
    case ValueKind::String: return 4;
    case ValueKind::Other: return 5;
  }
  return 5;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string_view to_string(RelationMode mode) {
  switch (mode) {
    case RelationMode::InstanceOf: return "instance";
    case RelationMode::SubclassOf: return "subclass";
    case RelationMode::Both: return "both";
  }
  return "both";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "";
    case RejectReason::WrongDatatype: return "WrongDatatype";
    case RejectReason::WrongValueType: return "WrongValueType";
    case RejectReason::OutOfRange: return "OutOfRange";
    case RejectReason::Unresolvable: return "Unresolvable";
  }
  return "";
}

ConstraintSet parse_constraints(std::istream& in, std::string_view source) {
  ConstraintSet out;
  RelationMode block_mode = RelationMode::Both;
  std::set<std::string> block_exceptions;
  bool in_rows = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = detail::trim(body.substr(1, eq - 1));
      auto val = detail::trim(body.substr(eq + 1));
      if (key != "mode" && key != "exception") continue;
      if (in_rows) {
        block_mode = RelationMode::Both;
        block_exceptions.clear();
        in_rows = false;
      }
      if (key == "exception") {
        if (!val.empty()) block_exceptions.emplace(val);
      } else if (val == "instance") {
        block_mode = RelationMode::InstanceOf;
      } else if (val == "subclass") {
        block_mode = RelationMode::SubclassOf;
      } else if (val == "both") {
        block_mode = RelationMode::Both;
      } else {
        throw FormatError(fmt::format("{}:{}: unknown mode '{}'", source, line_no, val));
      }
      continue;
    }
    auto tab = body.find('\t');
    if (tab == std::string_view::npos)
      throw FormatError(fmt::format("{}:{}: expected property<TAB>allowed_class", source, line_no));
    auto prop = detail::trim(body.substr(0, tab));
    auto cls = detail::trim(body.substr(tab + 1));
    if (prop == "property") continue;
    if (prop.empty() || cls.empty())
      throw FormatError(fmt::format("{}:{}: empty property or class", source, line_no));
    in_rows = true;
    auto& c = out[std::string(prop)];
    c.property = std::string(prop);
    c.allowed_classes.emplace(cls);
    c.mode = block_mode;
    c.exceptions.insert(block_exceptions.begin(), block_exceptions.end());
  }
  return out;
}

ConstraintSet load_constraints(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_constraints(in, path.string());
}

ValueKind infer_expected_datatype(std::span<const SubjectObject> known) {
  if (known.empty())
    throw ConfigError("no known values to infer the expected datatype from; set it in the configuration");
  std::array<std::size_t, 6> counts{};
  for (const auto& [s, o] : known) ++counts[static_cast<std::size_t>(o.kind())];
  ValueKind best = ValueKind::Other;
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    auto k = static_cast<ValueKind>(i);
    if (counts[i] > best_count || (counts[i] == best_count && counts[i] > 0 && precedence(k) < precedence(best))) {
      best = k;
      best_count = counts[i];
    }
  }
  return best;
}

bool check_datatype(const CandidateStatement& c, ValueKind expected) {
  if (c.object.kind() != expected) return false;
  return !(expected == ValueKind::ItemRef && c.unresolvable);
}

bool check_literal_range(const CandidateStatement& c, int cutoff_year) {
  const Date* d = c.object.as_date();
  return d == nullptr || d->year < cutoff_year;
}

ValueTypeChecker::ValueTypeChecker(const Graph& target, const ValueTypeConstraint& constraint, int depth_cap,
                                   std::string_view instance_of, std::string_view subclass_of)
    : target_(target),
      constraint_(constraint),
      instance_of_(target.find_node(instance_of)),
      subclass_of_(target.find_node(subclass_of)) {
  // Reverse breadth-first walk down subclass-of edges from the allowed classes.
  std::vector<TermId> frontier;
  for (const auto& cls : constraint.allowed_classes)
    if (auto t = target.find_node(cls); t && admissible_.insert(*t).second) frontier.push_back(*t);
  for (int depth = 0; depth < depth_cap && !frontier.empty() && subclass_of_; ++depth) {
    std::vector<TermId> next;
    for (TermId cls : frontier)
      for (const Edge& e : target.in_edges(cls, *subclass_of_))
        if (admissible_.insert(e.subject).second) next.push_back(e.subject);
    frontier = std::move(next);
  }
}

bool ValueTypeChecker::any_admissible(TermId object, std::optional<TermId> via) const {
  if (!via) return false;
  for (const Edge& e : target_.out_edges(object, *via))
    if (admissible_.contains(e.object)) return true;
  return false;
}

ValueTypeResult ValueTypeChecker::check(const CandidateStatement& c) const {
  if (constraint_.exceptions.contains(c.subject)) return {true, false};
  if (!c.object.is_item()) return {false, false};
  auto obj = target_.find_node(c.object.id());
  if (!obj || c.unresolvable) return {false, true};
  bool ok = false;
  if (constraint_.mode != RelationMode::SubclassOf) ok = any_admissible(*obj, instance_of_);
  if (!ok && constraint_.mode != RelationMode::InstanceOf) ok = any_admissible(*obj, subclass_of_);
  return {ok, false};
}

ValueTypeResult check_value_type(const Graph& target, const CandidateStatement& c, const ValueTypeConstraint& vc,
                                 int depth_cap, const ValidationConfig& cfg) {
  return ValueTypeChecker(target, vc, depth_cap, cfg.instance_of, cfg.subclass_of).check(c);
}

ValidationOutcome validate(const Graph& target, std::span<const CandidateStatement> candidates,
                           std::span<const SubjectObject> known, const ValueTypeConstraint* constraint,
                           const ValidationConfig& cfg) {
  ValidationOutcome out;
  out.expected = cfg.expected_datatype ? *cfg.expected_datatype : infer_expected_datatype(known);
  out.verdicts.reserve(candidates.size());

  auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : candidates) {
    ValidationVerdict v;
    v.statement = c;
    v.datatype_ok = check_datatype(c, out.expected);
    if (c.object.kind() == ValueKind::Date) v.range_ok = check_literal_range(c, cfg.cutoff_year);
    out.verdicts.push_back(std::move(v));
  }
  out.datatype_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (constraint) {
    ValueTypeChecker checker(target, *constraint, cfg.depth_cap, cfg.instance_of, cfg.subclass_of);
    for (auto& v : out.verdicts)
      if (v.statement.object.is_item()) v.value_type_ok = checker.check(v.statement).ok;
  }
  out.valuetype_seconds = seconds_since(t0);

  for (auto& v : out.verdicts) {
    const auto& c = v.statement;
    if (!v.datatype_ok) {
      v.reason = c.object.kind() == out.expected ? RejectReason::Unresolvable : RejectReason::WrongDatatype;
    } else if (v.value_type_ok == false) {
      v.reason = target.contains_node(c.object.id()) ? RejectReason::WrongValueType : RejectReason::Unresolvable;
    } else if (v.range_ok == false) {
      v.reason = RejectReason::OutOfRange;
    }
    v.accepted = v.reason == RejectReason::None;
    if (v.accepted) {
      Statement s = c.to_statement();
      s.promote();
      out.accepted.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace kgenrich
