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

#include "kgenrich/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "kgenrich/error.hpp"

namespace kgenrich {

namespace {

constexpr const char* kStageNames[] = {"entity_align",        "property_align",       "retrieval",
                                       "datatype_validation", "valuetype_validation", "total"};

std::array<double, 6> stage_values(const StageTimings& t) {
  return {t.entity_align, t.property_align, t.retrieval, t.datatype_validation, t.valuetype_validation, t.total};
}

double round2(double x) { return std::isfinite(x) && x > 0 ? std::round(x * 100.0) / 100.0 : 0.0; }

nlohmann::json rate_json(std::optional<double> r) { return format_rate(r); }

std::string sanitize(std::string_view text) {
  std::string out(text);
  std::replace_if(out.begin(), out.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return out;
}

void write_tsv_header(std::ostream& out, bool timings) {
  out << "property\tgraph\tstatus\tpath\ts_w\ts_g\ts_e\ts_total\tn_k\tn_u\tn_f\tn_c\tr_e\tr_e_entity\tr_c\tr_r";
  if (timings)
    for (const char* name : kStageNames) out << "\tt_" << name;
  out << '\n';
}

void write_tsv_row(std::ostream& out, const EnrichmentResult& r, bool timings) {
  out << r.property << '\t' << r.graph << '\t' << to_string(r.status) << '\t' << (r.path.empty() ? "-" : r.path)
      << '\t' << r.s_w << '\t' << r.s_g << '\t' << r.s_e << '\t' << r.s_total << '\t' << r.n_k << '\t' << r.n_u
      << '\t' << r.n_f << '\t' << r.n_c << '\t' << format_rate(r.r_e()) << '\t' << format_rate(r.r_e_entity())
      << '\t' << format_rate(r.r_c()) << '\t' << format_rate(r.r_r());
  if (timings)
    for (double v : stage_values(r.timings)) out << '\t' << format_seconds(v);
  out << '\n';
}

nlohmann::json timing_summary(std::span<const EnrichmentResult> rows) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t s = 0; s < std::size(kStageNames); ++s) {
    std::vector<double> xs;
    for (const auto& r : rows) xs.push_back(stage_values(r.timings)[s]);
    if (xs.empty()) continue;
    std::sort(xs.begin(), xs.end());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    const std::size_t n = xs.size();
    double median = n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
    out[kStageNames[s]] = {{"mean", round2(mean)}, {"median", round2(median)}, {"std", round2(std::sqrt(var))}};
  }
  return out;
}

nlohmann::json glossary() {
  return {
      {"r_e", "enrichment rate, validated new statements over known statements (s_e / s_w)"},
      {"r_e_entity", "entity-based enrichment rate, enriched gap entities over known entities (n_c / n_k)"},
      {"r_c", "compatibility rate, validated over retrieved candidates (s_e / s_g)"},
      {"r_r", "retrieval rate, gap entities with a validated value over all gap entities (n_c / n_u)"},
      {"both", "aggregate over all external graphs; identical statements from several graphs count once"},
      {"-", "rate undefined because its denominator is zero"},
  };
}

}  // namespace

std::string format_rate(std::optional<double> rate) {
  if (!rate || !std::isfinite(*rate)) return "-";
  return fmt::format("{:.2f}%", *rate * 100.0);
}

std::string format_seconds(double seconds) { return fmt::format("{:.2f}", round2(seconds)); }

nlohmann::json to_json(const EnrichmentResult& r, bool include_timings) {
  nlohmann::json j = {
      {"property", r.property}, {"graph", r.graph},   {"status", std::string(to_string(r.status))},
      {"message", r.message},   {"path", r.path},     {"s_w", r.s_w},
      {"s_g", r.s_g},           {"s_e", r.s_e},       {"s_total", r.s_total},
      {"n_k", r.n_k},           {"n_u", r.n_u},       {"n_f", r.n_f},
      {"n_c", r.n_c},           {"r_e", rate_json(r.r_e())}, {"r_e_entity", rate_json(r.r_e_entity())},
      {"r_c", rate_json(r.r_c())}, {"r_r", rate_json(r.r_r())},
  };
  if (include_timings) {
    nlohmann::json t = nlohmann::json::object();
    auto values = stage_values(r.timings);
    for (std::size_t i = 0; i < values.size(); ++i) t[kStageNames[i]] = round2(values[i]);
    j["timings"] = std::move(t);
  }
  return j;
}

EnrichmentResult result_from_json(const nlohmann::json& j) {
  EnrichmentResult r;
  try {
    r.property = j.at("property").get<std::string>();
    r.graph = j.at("graph").get<std::string>();
    const auto status = j.at("status").get<std::string>();
    r.status = status == "enriched" ? RunStatus::Enriched
               : status == "no-alignment" ? RunStatus::NoAlignment
                                          : RunStatus::Failed;
    r.message = j.value("message", "");
    r.path = j.value("path", "");
    r.s_w = j.at("s_w").get<std::size_t>();
    r.s_g = j.at("s_g").get<std::size_t>();
    r.s_e = j.at("s_e").get<std::size_t>();
    r.s_total = j.at("s_total").get<std::size_t>();
    r.n_k = j.at("n_k").get<std::size_t>();
    r.n_u = j.at("n_u").get<std::size_t>();
    r.n_f = j.at("n_f").get<std::size_t>();
    r.n_c = j.at("n_c").get<std::size_t>();
    if (auto it = j.find("timings"); it != j.end()) {
      r.timings.entity_align = it->value("entity_align", 0.0);
      r.timings.property_align = it->value("property_align", 0.0);
      r.timings.retrieval = it->value("retrieval", 0.0);
      r.timings.datatype_validation = it->value("datatype_validation", 0.0);
      r.timings.valuetype_validation = it->value("valuetype_validation", 0.0);
      r.timings.total = it->value("total", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("malformed result record: {}", e.what()));
  }
  return r;
}

nlohmann::json to_json(const AgreementReport& r) {
  return {{"property", r.property}, {"s_w", r.s_w},           {"s_e", r.s_e},
          {"s_overlap", r.s_overlap}, {"s_agree", r.s_agree}, {"s_disagree", r.s_disagree},
          {"skipped", r.skipped},   {"r_agree", format_rate(r.r_agree)}};
}

void emit_report(std::span<const EnrichmentResult> results, ReportFormat format, std::ostream& out,
                 const ReportOptions& options) {
  if (results.empty()) throw Error("cannot emit a report without results");
  if (format == ReportFormat::Tsv) {
    write_tsv_header(out, options.include_timings);
    for (const auto& r : results) write_tsv_row(out, r, options.include_timings);
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) rows.push_back(to_json(r, options.include_timings));
  out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

void emit_batch_report(const BatchResult& batch, ReportFormat format, std::ostream& out,
                       const ReportOptions& options) {
  if (batch.rows.empty() && batch.aggregates.empty()) throw Error("cannot emit a report without results");
  if (format == ReportFormat::Tsv) {
    write_tsv_header(out, options.include_timings);
    for (const auto& r : batch.rows) write_tsv_row(out, r, options.include_timings);
    for (const auto& r : batch.aggregates) write_tsv_row(out, r, options.include_timings);
    return;
  }
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : batch.rows) j["rows"].push_back(to_json(r, options.include_timings));
  j["aggregates"] = nlohmann::json::array();
  for (const auto& r : batch.aggregates) j["aggregates"].push_back(to_json(r, options.include_timings));
  j["median_novel_statements_per_property"] =
      batch.median_novel_per_property ? nlohmann::json(*batch.median_novel_per_property) : nlohmann::json();
  j["glossary"] = glossary();
  if (options.include_timings) j["timing_summary"] = timing_summary(batch.rows);
  out << j.dump(2) << '\n';
}

void write_report_file(const BatchResult& batch, ReportFormat format, const std::filesystem::path& path,
                       const ReportOptions& options) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  emit_batch_report(batch, format, out, options);
  if (!out) throw IoError("write failed for " + path.string());
}

void write_statements(std::span<const EmittedStatement> statements, std::ostream& out) {
  out << "subject\tproperty\tobject\tsources\n";
  for (const auto& s : statements) {
    out << s.subject << '\t' << s.property << '\t' << encode_value(s.object) << '\t';
    bool first = true;
    for (const auto& src : s.sources) {
      out << (first ? "" : ",") << sanitize(src);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace kgenrich
