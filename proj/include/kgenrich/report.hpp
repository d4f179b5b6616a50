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
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "kgenrich/config.hpp"
#include "kgenrich/consistency.hpp"
#include "kgenrich/pipeline.hpp"

namespace kgenrich {

// "52.15%" for 0.5215..., "-" when undefined.
std::string format_rate(std::optional<double> rate);
// Seconds with two decimals; negative or non-finite input renders as "0.00".
std::string format_seconds(double seconds);

struct ReportOptions {
  bool include_timings = true;
};

// Per-run rows followed by aggregate rows. Output is byte-stable for equal
// inputs; throws Error on an empty result list.
void emit_report(std::span<const EnrichmentResult> results, ReportFormat format, std::ostream& out,
                 const ReportOptions& options = {});

// Full batch report: rows, aggregates, median novel statements per property
// and, in JSON, a glossary plus per-stage timing summary.
void emit_batch_report(const BatchResult& batch, ReportFormat format, std::ostream& out,
                       const ReportOptions& options = {});

void write_report_file(const BatchResult& batch, ReportFormat format, const std::filesystem::path& path,
                       const ReportOptions& options = {});

// subject, property, object, sources; object in edge-TSV encoding.
void write_statements(std::span<const EmittedStatement> statements, std::ostream& out);

nlohmann::json to_json(const EnrichmentResult& r, bool include_timings = true);
EnrichmentResult result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AgreementReport& r);

}  // namespace kgenrich
