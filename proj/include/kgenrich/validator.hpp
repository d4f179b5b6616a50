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
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgenrich/gaps.hpp"
#include "kgenrich/graph.hpp"
#include "kgenrich/retriever.hpp"

namespace kgenrich {

enum class RelationMode { InstanceOf, SubclassOf, Both };

std::string_view to_string(RelationMode mode);

// Objects of `property` must be typed by one of `allowed_classes`, directly or
// through subclass-of. Subjects listed in `exceptions` are exempt.
struct ValueTypeConstraint {
  std::string property;
  std::set<std::string> allowed_classes;
  RelationMode mode = RelationMode::Both;
  std::set<std::string> exceptions;
};

using ConstraintSet = std::map<std::string, ValueTypeConstraint>;

// Constraint file: TSV rows `property<TAB>allowed_class`, an optional
// `property allowed_class` header, and `#mode=instance|subclass|both` /
// `#exception=<node>` directives. Directives apply to the rows that follow
// them; a directive after a row starts a fresh block (mode both, no
// exceptions). Other `#` lines are comments.
ConstraintSet parse_constraints(std::istream& in, std::string_view source = "constraints");
ConstraintSet load_constraints(const std::filesystem::path& path);

enum class RejectReason { None, WrongDatatype, WrongValueType, OutOfRange, Unresolvable };

std::string_view to_string(RejectReason r);

struct ValidationVerdict {
  CandidateStatement statement;
  bool datatype_ok = false;
  std::optional<bool> value_type_ok;  // absent without a constraint or for literal objects
  std::optional<bool> range_ok;       // absent for non-date objects
  bool accepted = false;
  RejectReason reason = RejectReason::None;  // first failing check
};

struct ValidationConfig {
  std::optional<ValueKind> expected_datatype;  // overrides inference
  int cutoff_year = 2022;
  int depth_cap = 20;
  std::string instance_of = "P31";
  std::string subclass_of = "P279";
};

// Modal kind of the known objects; ties go to ItemRef > Date > Quantity >
// MonolingualText > String > Other. Throws ConfigError on an empty set.
ValueKind infer_expected_datatype(std::span<const SubjectObject> known);

// Kind equality; an ItemRef additionally has to be resolved into the target graph.
bool check_datatype(const CandidateStatement& c, ValueKind expected);

// Dates only: year strictly below the cutoff. Other kinds pass.
bool check_literal_range(const CandidateStatement& c, int cutoff_year);

struct ValueTypeResult {
  bool ok = false;
  bool unresolvable = false;  // object is not a node of the target graph
};

// Precomputes, once per constraint, every class that reaches an allowed class
// within depth_cap subclass-of steps, so each check is a handful of lookups.
// Immutable after construction; safe for concurrent readers.
class ValueTypeChecker {
 public:
  ValueTypeChecker(const Graph& target, const ValueTypeConstraint& constraint, int depth_cap,
                   std::string_view instance_of = "P31", std::string_view subclass_of = "P279");

  ValueTypeResult check(const CandidateStatement& c) const;

 private:
  bool any_admissible(TermId object, std::optional<TermId> via) const;

  const Graph& target_;
  const ValueTypeConstraint& constraint_;
  std::optional<TermId> instance_of_;
  std::optional<TermId> subclass_of_;
  std::unordered_set<TermId> admissible_;
};

ValueTypeResult check_value_type(const Graph& target, const CandidateStatement& c, const ValueTypeConstraint& vc,
                                 int depth_cap, const ValidationConfig& cfg = {});

struct ValidationOutcome {
  ValueKind expected = ValueKind::ItemRef;
  std::vector<Statement> accepted;  // S_e, provenance Validated
  std::vector<ValidationVerdict> verdicts;
  double datatype_seconds = 0.0;
  double valuetype_seconds = 0.0;
};

// accepted = datatype pass AND value-type pass (item objects with a
// constraint) AND range pass (dates). Every candidate gets a verdict.
ValidationOutcome validate(const Graph& target, std::span<const CandidateStatement> candidates,
                           std::span<const SubjectObject> known, const ValueTypeConstraint* constraint,
                           const ValidationConfig& cfg);

}  // namespace kgenrich
