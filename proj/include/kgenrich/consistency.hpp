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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgenrich/graph.hpp"
#include "kgenrich/retriever.hpp"

namespace kgenrich {

// Cross-graph agreement on subjects valued in both graphs. Every (target
// value, external value) pair of a subject is one comparison, so
// s_agree + s_disagree == s_overlap.
struct AgreementReport {
  std::string property;
  std::size_t s_w = 0;  // informational, filled by the caller
  std::size_t s_e = 0;  // informational, filled by the caller
  std::size_t s_overlap = 0;
  std::size_t s_agree = 0;
  std::size_t s_disagree = 0;
  std::size_t skipped = 0;  // values outside the comparable domain
  std::optional<double> r_agree;
};

// agree / overlap; nullopt when overlap is zero.
std::optional<double> agreement_ratio(std::size_t agree, std::size_t overlap);

// `overlap` holds candidates retrieved for subjects that already have values.
AgreementReport agreement(const Graph& target, std::string_view property,
                          std::span<const CandidateStatement> overlap);

enum class Granularity { Year, Day };

struct LiteralAgreement {
  AgreementReport report;
  std::vector<std::pair<Date, Date>> scatter;  // (target, external) per comparison
};

// Date-valued variant: both sides are truncated to `granularity` before the
// equality test. Non-date values on either side are skipped and counted.
LiteralAgreement literal_agreement(const Graph& target, std::string_view property,
                                   std::span<const CandidateStatement> overlap, Granularity granularity);

}  // namespace kgenrich
