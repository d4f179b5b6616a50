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

// kgenrich: fill missing property values of a target graph from external
// linked-data graphs. One subcommand per pipeline stage plus end-to-end runs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "kgenrich/config.hpp"
#include "kgenrich/consistency.hpp"
#include "kgenrich/error.hpp"
#include "kgenrich/pipeline.hpp"
#include "kgenrich/report.hpp"
#include "kgenrich/tsv_io.hpp"

namespace fs = std::filesystem;
using namespace kgenrich;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Writes to `path`, or stdout when empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  fn(out);
  if (!out) throw IoError("write failed for " + path);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

const ExternalGraphConfig& pick_external(const PipelineConfig& cfg, const std::string& name) {
  if (!name.empty()) return cfg.external(name);
  if (cfg.externals.size() != 1)
    throw ConfigError(fmt::format("config defines {} external graphs; choose one with --graph", cfg.externals.size()));
  return cfg.externals.front();
}

// Target + one external graph described by explicit files and a mapping config.
struct StagedInputs {
  PipelineConfig cfg;
  Graph target;
  Graph external;
  ExternalSource source;
};

std::unique_ptr<StagedInputs> load_staged(const std::string& mapping_cfg, const std::string& target_path,
                                          const std::string& external_path, const std::string& graph_name) {
  auto in = std::make_unique<StagedInputs>();
  in->cfg = load_config(mapping_cfg);
  const auto& ext = pick_external(in->cfg, graph_name);
  in->target = load_graph(target_path, "target", in->cfg.load);
  in->external = load_graph(external_path, ext.name, in->cfg.load);
  in->source = {ext.name, &in->external, build_source_mapping(in->target, ext), in->cfg.align_for(ext)};
  return in;
}

void report_run_warnings(const BatchResult& batch) {
  for (const auto& r : batch.rows) {
    if (r.status == RunStatus::Failed) warn(fmt::format("{} on {} failed: {}", r.property, r.graph, r.message));
    else if (!r.message.empty()) warn(fmt::format("{} on {}: {}", r.property, r.graph, r.message));
  }
}

void write_batch_outputs(const BatchResult& batch, const fs::path& dir, const PipelineConfig& cfg,
                         const ReportOptions& options) {
  fs::create_directories(dir);
  with_output((dir / cfg.statements_file).string(), [&](std::ostream& out) { write_statements(batch.statements, out); });
  write_report_file(batch, ReportFormat::Tsv, dir / (cfg.report_file + ".tsv"), options);
  write_report_file(batch, ReportFormat::Json, dir / (cfg.report_file + ".json"), options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgenrich: knowledge-graph enrichment from external linked-data graphs"};
  app.require_subcommand(1);

  // load-check
  std::string lc_graph, lc_config;
  double lc_malformed = 0.10;
  auto* load_check = app.add_subcommand("load-check", "Load a graph file and print its statistics");
  load_check->add_option("--graph", lc_graph, "N-Triples (.nt) or edge-TSV file")->required();
  load_check->add_option("--config", lc_config, "Config supplying the prefix table");
  load_check->add_option("--max-malformed", lc_malformed, "Tolerated malformed line fraction");

  // detect-gaps
  std::string dg_graph, dg_property, dg_class, dg_type_prop = "P31", dg_out;
  auto* detect = app.add_subcommand("detect-gaps", "Partition entities into known and unknown for a property");
  detect->add_option("--graph", dg_graph)->required();
  detect->add_option("--property", dg_property)->required();
  detect->add_option("--class", dg_class, "Restrict entities to instances of this class");
  detect->add_option("--type-prop", dg_type_prop, "Type property used with --class");
  detect->add_option("--out", dg_out);

  // resolve
  std::string rs_mapping, rs_nodes, rs_graph, rs_target, rs_out;
  bool rs_inverse = false;
  auto* resolve_cmd = app.add_subcommand("resolve", "Map target nodes to external nodes (or back with --inverse)");
  resolve_cmd->add_option("--mapping", rs_mapping, "Config with [graphs] target and [mappings]")->required();
  resolve_cmd->add_option("--nodes", rs_nodes, "One node id per line")->required();
  resolve_cmd->add_option("--graph", rs_graph, "External graph name in the config");
  resolve_cmd->add_option("--target-graph", rs_target, "Overrides [graphs] target");
  resolve_cmd->add_flag("--inverse", rs_inverse);
  resolve_cmd->add_option("--out", rs_out);

  // align
  std::string al_target, al_external, al_property, al_mapping, al_graph, al_mode, al_out;
  std::optional<int> al_max_len;
  std::optional<std::size_t> al_sample_cap;
  std::optional<double> al_threshold;
  auto* align = app.add_subcommand("align", "Rank external property paths for a target property");
  align->add_option("--target-graph", al_target)->required();
  align->add_option("--external-graph", al_external)->required();
  align->add_option("--property", al_property)->required();
  align->add_option("--mapping", al_mapping)->required();
  align->add_option("--graph", al_graph);
  align->add_option("--max-len", al_max_len);
  align->add_option("--sample-cap", al_sample_cap);
  align->add_option("--threshold", al_threshold);
  align->add_option("--mode", al_mode)->check(CLI::IsMember({"hybrid", "freq", "string"}));
  align->add_option("--out", al_out);

  // retrieve
  std::string rt_path, rt_target, rt_external, rt_property, rt_mapping, rt_graph, rt_out;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Collect candidate statements along a selected path");
  retrieve_cmd->add_option("--path", rt_path, "Alignment table written by align")->required();
  retrieve_cmd->add_option("--target-graph", rt_target)->required();
  retrieve_cmd->add_option("--external-graph", rt_external)->required();
  retrieve_cmd->add_option("--property", rt_property)->required();
  retrieve_cmd->add_option("--mapping", rt_mapping)->required();
  retrieve_cmd->add_option("--graph", rt_graph);
  retrieve_cmd->add_option("--out", rt_out);

  // validate
  std::string va_candidates, va_constraints, va_target, va_datatype, va_out;
  int va_cutoff = 2022, va_depth = 20;
  auto* validate_cmd = app.add_subcommand("validate", "Check candidates for datatype, value type and date range");
  validate_cmd->add_option("--candidates", va_candidates)->required();
  validate_cmd->add_option("--constraints", va_constraints);
  validate_cmd->add_option("--target-graph", va_target)->required();
  validate_cmd->add_option("--cutoff-year", va_cutoff);
  validate_cmd->add_option("--depth-cap", va_depth);
  validate_cmd->add_option("--datatype", va_datatype, "Expected datatype instead of inferring it");
  validate_cmd->add_option("--out", va_out);

  // enrich / batch
  std::string en_config, en_property, en_graph, en_out_dir;
  bool en_no_timings = false;
  auto* enrich = app.add_subcommand("enrich", "Run the whole pipeline for one property");
  enrich->add_option("--config", en_config)->required();
  enrich->add_option("--property", en_property)->required();
  enrich->add_option("--graph", en_graph, "Only this external graph");
  enrich->add_option("--out-dir", en_out_dir);
  enrich->add_flag("--no-timings", en_no_timings);

  std::string ba_config, ba_properties, ba_out_dir;
  bool ba_no_timings = false;
  auto* batch = app.add_subcommand("batch", "Run the pipeline for many properties over every external graph");
  batch->add_option("--config", ba_config)->required();
  batch->add_option("--properties", ba_properties, "Comma list; defaults to [query] properties");
  batch->add_option("--out-dir", ba_out_dir);
  batch->add_flag("--no-timings", ba_no_timings);

  // consistency
  std::string co_config, co_property, co_graph, co_granularity = "year", co_out_dir;
  auto* consistency = app.add_subcommand("consistency", "Compare external values with existing target values");
  consistency->add_option("--config", co_config)->required();
  consistency->add_option("--property", co_property)->required();
  consistency->add_option("--granularity", co_granularity)->check(CLI::IsMember({"year", "day"}));
  consistency->add_option("--graph", co_graph);
  consistency->add_option("--out-dir", co_out_dir);

  // report
  std::string rp_input, rp_format = "tsv", rp_out;
  bool rp_no_timings = false;
  auto* report = app.add_subcommand("report", "Re-render a JSON batch report");
  report->add_option("--input", rp_input)->required();
  report->add_option("--format", rp_format)->check(CLI::IsMember({"tsv", "json"}));
  report->add_option("--out", rp_out);
  report->add_flag("--no-timings", rp_no_timings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*load_check) {
      LoadOptions opts = lc_config.empty() ? LoadOptions{} : load_config(lc_config).load;
      if (load_check->count("--max-malformed")) opts.max_malformed_ratio = lc_malformed;
      Graph g = load_graph(lc_graph, "graph", opts);
      const auto& st = g.stats();
      std::cout << "edges\t" << g.edge_count() << "\nnodes\t" << g.node_count() << "\nterms\t" << g.term_count()
                << "\ndata_lines\t" << st.data_lines << "\nmalformed_lines\t" << st.malformed_lines
                << "\nduplicate_edges\t" << st.duplicate_edges << '\n';
      if (st.malformed_lines) warn(fmt::format("first malformed line: {}", st.first_malformed_line));
    } else if (*detect) {
      Graph g = load_graph(dg_graph, "target");
      std::optional<EntityFilter> filter;
      if (!dg_class.empty()) filter = EntityFilter{dg_class, dg_type_prop};
      auto gaps = detect_gaps(g, dg_property, filter);
      if (gaps.warning) warn(*gaps.warning);
      with_output(dg_out, [&](std::ostream& out) { write_gaps(gaps, out); });
    } else if (*resolve_cmd) {
      PipelineConfig cfg = load_config(rs_mapping);
      if (!rs_target.empty()) cfg.target_path = rs_target;
      if (cfg.target_path.empty()) throw ConfigError("missing key [graphs] target (or --target-graph)");
      const auto& ext = pick_external(cfg, rs_graph);
      Graph target = load_graph(cfg.target_path, "target", cfg.load);
      EntityMapping m = build_source_mapping(target, ext);
      std::set<std::string> nodes;
      auto in = open_input(rs_nodes);
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) nodes.insert(line);
      }
      with_output(rs_out, [&](std::ostream& out) {
        if (rs_inverse) {
          auto r = inverse_resolve(m, nodes);
          out << "external\tnode\tambiguous\n";
          for (const auto& [x, ts] : r.mapped)
            for (const auto& t : ts) out << x << '\t' << t << '\t' << (r.ambiguous.contains(x) ? 1 : 0) << '\n';
        } else {
          auto r = resolve(m, nodes);
          out << "node\texternal\n";
          for (const auto& [t, xs] : r.mapped)
            for (const auto& x : xs) out << t << '\t' << x << '\n';
          std::cerr << fmt::format("coverage\t{:.4f}\t({} of {})\n", r.coverage, r.mapped.size(), r.requested);
        }
      });
    } else if (*align) {
      auto in = load_staged(al_mapping, al_target, al_external, al_graph);
      AlignConfig cfg = in->source.align;
      if (al_max_len) cfg.max_path_length = *al_max_len;
      if (al_sample_cap) cfg.sample_cap = *al_sample_cap;
      if (al_threshold) cfg.similarity_threshold = *al_threshold;
      if (!al_mode.empty()) cfg.mode = *parse_align_mode(al_mode);
      cfg.check();
      auto gaps = detect_gaps(in->target, al_property, in->cfg.entity_filter);
      auto pairs = map_known_pairs(gaps, in->source.mapping, in->cfg.no_value_markers);
      if (pairs.empty()) warn(fmt::format("no known {} pair maps into {}", al_property, in->source.name));
      auto alignment = score_and_select(enumerate_paths(in->external, pairs, cfg),
                                        in->target.label_of(al_property).value_or(al_property), in->external, cfg);
      with_output(al_out, [&](std::ostream& out) { write_alignment(alignment, out); });
    } else if (*retrieve_cmd) {
      auto in = load_staged(rt_mapping, rt_target, rt_external, rt_graph);
      auto path_in = open_input(rt_path);
      PropertyPath path = read_selected_path(path_in);
      auto gaps = detect_gaps(in->target, rt_property, in->cfg.entity_filter);
      auto unknown = resolve(in->source.mapping, gaps.unknown_subjects);
      auto candidates = retrieve(in->external, unknown.mapped, path, in->source.mapping, rt_property);
      with_output(rt_out, [&](std::ostream& out) { write_candidates(candidates, out); });
    } else if (*validate_cmd) {
      Graph target = load_graph(va_target, "target");
      auto cand_in = open_input(va_candidates);
      auto candidates = read_candidates(cand_in);
      ConstraintSet constraints;
      if (!va_constraints.empty()) constraints = load_constraints(va_constraints);
      ValidationConfig vcfg;
      vcfg.cutoff_year = va_cutoff;
      vcfg.depth_cap = va_depth;
      if (!va_datatype.empty()) {
        vcfg.expected_datatype = parse_value_kind(va_datatype);
        if (!vcfg.expected_datatype) throw ConfigError("unknown datatype " + va_datatype);
      }
      // Candidates are validated per property against that property's known values.
      std::map<std::string, std::vector<CandidateStatement>> by_property;
      for (auto& c : candidates) by_property[c.property].push_back(std::move(c));
      std::vector<ValidationVerdict> verdicts;
      for (const auto& [property, group] : by_property) {
        auto gaps = detect_gaps(target, property);
        auto it = constraints.find(property);
        auto outcome = validate(target, group, gaps.known, it == constraints.end() ? nullptr : &it->second, vcfg);
        for (auto& v : outcome.verdicts) verdicts.push_back(std::move(v));
      }
      with_output(va_out, [&](std::ostream& out) { write_verdicts(verdicts, out); });
    } else if (*enrich || *batch) {
      const bool single = enrich->parsed();
      PipelineConfig cfg = load_config(single ? en_config : ba_config);
      if (single && !en_graph.empty()) {
        auto keep = cfg.external(en_graph);
        cfg.externals = {keep};
      }
      const std::string& out_dir = single ? en_out_dir : ba_out_dir;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      std::vector<std::string> properties = cfg.properties;
      if (single) {
        properties = {en_property};
      } else if (!ba_properties.empty()) {
        properties.clear();
        std::stringstream ss(ba_properties);
        for (std::string p; std::getline(ss, p, ',');)
          if (!p.empty()) properties.push_back(p);
      }
      if (properties.empty()) throw ConfigError("no properties given (--properties or [query] properties)");
      Workspace ws(cfg);
      auto result = batch_enrich(ws.target(), ws.sources(), properties, ws.options());
      report_run_warnings(result);
      ReportOptions opts;
      opts.include_timings = !(single ? en_no_timings : ba_no_timings);
      write_batch_outputs(result, cfg.output_dir, cfg, opts);
      emit_batch_report(result, ReportFormat::Tsv, std::cout, opts);
    } else if (*consistency) {
      PipelineConfig cfg = load_config(co_config);
      if (!co_out_dir.empty()) cfg.output_dir = co_out_dir;
      Workspace ws(cfg);
      const auto& source = co_graph.empty() ? ws.sources().at(0) : ws.source(co_graph);
      auto run = overlap_run(ws.target(), source, co_property, ws.options());
      auto enriched = enrich_property(ws.target(), source, co_property, ws.options());
      std::vector<CandidateStatement> validated;
      for (const auto& v : run.validation.verdicts)
        if (v.accepted) validated.push_back(v.statement);

      AgreementReport rep;
      std::vector<std::pair<Date, Date>> scatter;
      if (run.result.status == RunStatus::Enriched && run.validation.expected == ValueKind::Date) {
        auto lit = literal_agreement(ws.target(), co_property, validated,
                                     co_granularity == "day" ? Granularity::Day : Granularity::Year);
        rep = lit.report;
        scatter = std::move(lit.scatter);
      } else {
        rep = agreement(ws.target(), co_property, validated);
      }
      rep.s_w = run.result.s_w;
      rep.s_e = enriched.result.s_e;
      fs::create_directories(cfg.output_dir);
      const std::string stem = fmt::format("consistency_{}_{}", co_property, source.name);
      with_output((cfg.output_dir / (stem + ".json")).string(),
                  [&](std::ostream& out) { out << to_json(rep).dump(2) << '\n'; });
      with_output((cfg.output_dir / (stem + "_scatter.csv")).string(), [&](std::ostream& out) {
        out << "target_year,external_year\n";
        for (const auto& [t, x] : scatter) out << t.year << ',' << x.year << '\n';
      });
      std::cout << to_json(rep).dump(2) << '\n';
    } else if (*report) {
      auto in = open_input(rp_input);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(fmt::format("{}: {}", rp_input, e.what()));
      }
      BatchResult b;
      for (const auto& r : j.value("rows", nlohmann::json::array())) b.rows.push_back(result_from_json(r));
      for (const auto& r : j.value("aggregates", nlohmann::json::array())) b.aggregates.push_back(result_from_json(r));
      if (auto it = j.find("median_novel_statements_per_property"); it != j.end() && it->is_number())
        b.median_novel_per_property = it->get<double>();
      ReportOptions opts;
      opts.include_timings = !rp_no_timings;
      with_output(rp_out, [&](std::ostream& out) {
        emit_batch_report(b, rp_format == "json" ? ReportFormat::Json : ReportFormat::Tsv, out, opts);
      });
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
