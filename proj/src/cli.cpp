/*
 * Copyright 2026 The ADA Simulator Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ada/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ada/errors.hpp"
#include "ada/metrics.hpp"
#include "ada/policy.hpp"
#include "ada/report_io.hpp"
#include "ada/scenario.hpp"
#include "ada/simulation.hpp"

#ifndef ADA_SIM_DEFAULT_FIXTURES
#define ADA_SIM_DEFAULT_FIXTURES "fixtures"
#endif

namespace ada::cli {

namespace fs = std::filesystem;

fs::path fixture_dir() {
  if (const char* env = std::getenv("ADA_SIM_FIXTURES"); env != nullptr && *env != '\0') return env;
  return ADA_SIM_DEFAULT_FIXTURES;
}

fs::path resolve_input(const std::string& argument) {
  const fs::path direct(argument);
  if (fs::exists(direct)) return direct;
  if (direct.has_parent_path() || direct.has_extension()) return direct;
  for (const char* group : {"scenarios", "policies"}) {
    const fs::path candidate = fixture_dir() / group / (argument + ".yaml");
    if (fs::exists(candidate)) return candidate;
  }
  return direct;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string number(const std::optional<double>& value) { return value ? number(*value) : "n/a"; }

int cmd_validate(const std::string& argument, std::ostream& out) {
  const fs::path path = resolve_input(argument);
  const std::string text = read_text_file(path);
  if (is_scenario_document(text)) {
    const auto script = load_scenario(text, path.parent_path());
    out << "OK " << path.string() << ": scenario '" << script.name << "'\n";
    return kExitOk;
  }
  const auto documents = parse_policy_documents(text);
  out << "OK " << path.string() << ": " << documents.size() << (documents.size() == 1 ? " policy" : " policies")
      << "\n";
  return kExitOk;
}

struct RunOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  bool baseline = false;
  std::string out_dir = "ada-sim-out";
  unsigned threads = 0;
};

std::string replication_stem(int replication) {
  std::ostringstream name;
  name << "replication-" << std::setw(3) << std::setfill('0') << replication;
  return name.str();
}

void print_summary(const AggregateReport& report, std::ostream& out) {
  out << "scenario " << report.scenario << ": " << report.replications << " replication(s), "
      << (report.ada_enabled ? "ADA enabled" : "baseline") << ", seed " << report.seed << "\n";
  for (const auto& [key, ci] : report.summary) {
    out << "  " << key << " = " << number(ci.mean) << " +/- " << number(ci.half_width) << " (n=" << ci.n << ")\n";
  }
  const auto& chain = report.pooled_kill_chain;
  out << "  pooled: attempts " << chain.attempts << ", disruptions " << chain.disruptions << ", completions "
      << chain.completions << ", completion_rate " << number(chain.completion_rate) << "\n";
  if (const auto& c = report.baseline_comparison) {
    out << "  vs baseline: completion_rate " << number(c->completion_rate_with_ada) << " vs "
        << number(c->completion_rate_baseline) << ", reduction " << number(c->completion_rate_reduction)
        << ", effort_ratio " << (c->effort_ratio_unbounded ? "unbounded" : number(c->effort_ratio))
        << ", availability_delta " << number(c->availability_delta) << "\n";
  }
}

int cmd_run(const RunOptions& options, std::ostream& out) {
  ScenarioScript script = load_scenario_file(resolve_input(options.scenario));
  if (options.seed) script.seed = *options.seed;
  if (options.replications) script.replications = *options.replications;
  if (options.baseline) script.ada_enabled = false;
  validate(script);

  const auto results = run(script, options.threads);
  std::vector<MetricsReport> reports;
  reports.reserve(results.size());
  for (const auto& r : results) reports.push_back(r.report);
  AggregateReport summary = aggregate(reports);

  std::optional<AggregateReport> baseline;
  if (script.attacker && script.ada_enabled) {
    std::vector<MetricsReport> baseline_reports;
    for (const auto& r : run(baseline_of(script), options.threads)) baseline_reports.push_back(r.report);
    baseline = aggregate(baseline_reports);
    summary.baseline_comparison = compare(summary, *baseline);
  }

  const fs::path dir(options.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& r : results) {
    const std::string stem = replication_stem(r.replication);
    write_file(dir / (stem + ".events.ndjson"), r.log.to_ndjson());
    write_file(dir / (stem + ".report.json"), to_json_text(r.report));
  }
  write_file(dir / "replications.csv", to_csv(reports));
  write_file(dir / "aggregate.report.json", to_json_text(summary));
  if (baseline) write_file(dir / "baseline.aggregate.report.json", to_json_text(*baseline));

  print_summary(summary, out);
  out << "artifacts written to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& out_file, std::ostream& out) {
  const auto first = report_from_json_text(read_text_file(a));
  const auto second = report_from_json_text(read_text_file(b));
  const std::string text = to_json_text(compare(first, second));
  if (!out_file.empty()) write_file(out_file, text);
  out << text;
  return kExitOk;
}

int cmd_list_fixtures(std::ostream& out) {
  const fs::path root = fixture_dir();
  if (!fs::is_directory(root)) throw IoError("fixture directory '" + root.string() + "' does not exist");
  for (const char* group : {"scenarios", "policies"}) {
    const fs::path dir = root / group;
    if (!fs::is_directory(dir)) continue;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".yaml") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) out << group << "\t" << file.stem().string() << "\t" << file.string() << "\n";
  }
  return kExitOk;
}

constexpr const char* kRunFooter =
    "Aggregate statistics: each metric is reported as mean +/- 1.96*sd/sqrt(n) over the\n"
    "replications where it is defined (normal approximation, 95%). Replication r uses\n"
    "seed + r. With an attacker and ADA enabled the baseline is also run and compared.";

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for automated moving target defense on container workloads", "ada-sim"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Validate a policy or scenario document");
  validate_cmd->add_option("path", validate_path, "File path or fixture name")->required();

  RunOptions run_options;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write event logs and reports");
  run_cmd->add_option("path", run_options.scenario, "Scenario file path or fixture name")->required();
  run_cmd->add_option("--seed", run_options.seed, "Override the scenario seed");
  run_cmd->add_option("--replications", run_options.replications, "Override the replication count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--baseline", run_options.baseline, "Disable rotation and mutation");
  run_cmd->add_option("--out", run_options.out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--threads", run_options.threads, "Worker threads, 0 = all cores")->capture_default_str();
  run_cmd->footer(kRunFooter);

  std::string compare_a;
  std::string compare_b;
  std::string compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Compare an ADA report against a baseline report");
  compare_cmd->add_option("with_ada", compare_a, "Report produced with ADA enabled")->required();
  compare_cmd->add_option("baseline", compare_b, "Baseline report")->required();
  compare_cmd->add_option("--out", compare_out, "Also write the comparison to this file");

  auto* list_cmd = app.add_subcommand("list-fixtures", "List shipped scenario and policy fixtures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitRuntime;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_path, out);
    if (run_cmd->parsed()) return cmd_run(run_options, out);
    if (compare_cmd->parsed()) return cmd_compare(compare_a, compare_b, compare_out, out);
    if (list_cmd->parsed()) return cmd_list_fixtures(out);
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const IncompatibleReports& e) {
    err << "incompatible reports: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace ada::cli
