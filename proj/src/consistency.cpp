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

#include "kgenrich/consistency.hpp"

#include <map>
#include <set>

namespace kgenrich {

namespace {

std::map<std::string, std::set<Value>> group_by_subject(std::span<const CandidateStatement> overlap) {
  std::map<std::string, std::set<Value>> out;
  for (const auto& c : overlap) out[c.subject].insert(c.object);
  return out;
}

}  // namespace

std::optional<double> agreement_ratio(std::size_t agree, std::size_t overlap) {
  if (overlap == 0) return std::nullopt;
  return static_cast<double>(agree) / static_cast<double>(overlap);
}

AgreementReport agreement(const Graph& target, std::string_view property,
                          std::span<const CandidateStatement> overlap) {
  AgreementReport r;
  r.property = std::string(property);
  for (const auto& [subject, external] : group_by_subject(overlap)) {
    auto known = target.objects_of(subject, property);
    for (const Value& t : known) {
      for (const Value& x : external) {
        ++r.s_overlap;
        if (t == x) ++r.s_agree;
        else ++r.s_disagree;
      }
    }
  }
  r.r_agree = agreement_ratio(r.s_agree, r.s_overlap);
  return r;
}

LiteralAgreement literal_agreement(const Graph& target, std::string_view property,
                                   std::span<const CandidateStatement> overlap, Granularity granularity) {
  const DatePrecision p = granularity == Granularity::Year ? DatePrecision::Year : DatePrecision::Day;
  LiteralAgreement out;
  AgreementReport& r = out.report;
  r.property = std::string(property);
  for (const auto& [subject, external] : group_by_subject(overlap)) {
    std::vector<Date> ext_dates;
    for (const Value& x : external) {
      if (const Date* d = x.as_date()) ext_dates.push_back(*d);
      else ++r.skipped;
    }
    for (const Value& t : target.objects_of(subject, property)) {
      const Date* td = t.as_date();
      if (!td) {
        ++r.skipped;
        continue;
      }
      for (const Date& xd : ext_dates) {
        ++r.s_overlap;
        if (td->truncated(p) == xd.truncated(p)) ++r.s_agree;
        else ++r.s_disagree;
        out.scatter.emplace_back(*td, xd);
      }
    }
  }
  r.r_agree = agreement_ratio(r.s_agree, r.s_overlap);
  return out;
}

}  // namespace kgenrich
