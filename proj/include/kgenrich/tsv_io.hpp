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

#include <iosfwd>
#include <span>
#include <vector>

#include "kgenrich/aligner.hpp"
#include "kgenrich/gaps.hpp"
#include "kgenrich/retriever.hpp"
#include "kgenrich/validator.hpp"

namespace kgenrich {

// Tabular files exchanged between CLI stages. Values use the edge-TSV
// encoding so literals survive a write/read cycle.

// subject, status (known|unknown), sorted by subject.
void write_gaps(const GapPartition& gaps, std::ostream& out);

// path, support, similarity, selected (1|0) in ranking order.
void write_alignment(const Alignment& alignment, std::ostream& out);
// The row flagged selected in an alignment table. Throws FormatError if none.
PropertyPath read_selected_path(std::istream& in);

// subject, property, object, external_object, flags, path, source_graph.
void write_candidates(std::span<const CandidateStatement> candidates, std::ostream& out);
std::vector<CandidateStatement> read_candidates(std::istream& in);

// Candidate columns plus datatype_ok, value_type_ok, range_ok, accepted,
// reject_reason. Absent checks render as "-".
void write_verdicts(std::span<const ValidationVerdict> verdicts, std::ostream& out);

}  // namespace kgenrich
