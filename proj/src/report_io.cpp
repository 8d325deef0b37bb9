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

#include "ada/report_io.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>

#include "ada/errors.hpp"

namespace ada {

namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

Json stats_json(const DurationStats& stats) {
  Json samples = Json::array();
  for (const Duration d : stats.samples) samples.push_back(d.count());
  return Json{{"count", stats.count},         {"mean_us", stats.mean.count()}, {"min_us", stats.min.count()},
              {"max_us", stats.max.count()},  {"p95_us", stats.p95.count()},   {"variance_s2", stats.variance_s2},
              {"samples_us", std::move(samples)}};
}

Json chain_json(const KillChainStats& chain) {
  return Json{{"attempts", chain.attempts},
              {"starved", chain.starved},
              {"disruptions", chain.disruptions},
              {"completions", chain.completions},
              {"disruptions_before_detection", chain.disruptions_before_detection},
              {"completion_rate", optional_number(chain.completion_rate)},
              {"per_binding_completion_rate", optional_number(chain.per_binding_completion_rate)}};
}

Json comparison_json(const Comparison& c) {
  return Json{{"report_type", "comparison"},
              {"scenario", c.scenario},
              {"effort_ratio", optional_number(c.effort_ratio)},
              {"effort_ratio_unbounded", c.effort_ratio_unbounded},
              {"completion_rate_with_ada", optional_number(c.completion_rate_with_ada)},
              {"completion_rate_baseline", optional_number(c.completion_rate_baseline)},
              {"completion_rate_reduction", optional_number(c.completion_rate_reduction)},
              {"completion_rate_relative_reduction", optional_number(c.completion_rate_relative_reduction)},
              {"availability_delta", c.availability_delta},
              {"churn_overhead_per_hour", c.churn_overhead},
              {"disruption_delta", c.disruption_delta}};
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

// Field access with path-qualified errors.
class Reader {
 public:
  Reader(const nlohmann::json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_.empty() ? "report" : path_, "expected an object");
  }

  const nlohmann::json& at(const char* key) const {
    const auto it = node_.find(key);
    if (it == node_.end()) throw ValidationError(path_of(key), "missing field");
    return *it;
  }

  std::string path_of(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename T>
  T get(const char* key) const {
    const auto& value = at(key);
    try {
      return value.get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ValidationError(path_of(key), "wrong type");
    }
  }

  std::string string(const char* key) const {
    const auto& value = at(key);
    if (!value.is_string()) throw ValidationError(path_of(key), "expected a string");
    return value.get<std::string>();
  }

  double number(const char* key) const {
    const auto& value = at(key);
    if (!value.is_number()) throw ValidationError(path_of(key), "expected a number");
    return value.get<double>();
  }

  std::optional<double> optional_number(const char* key) const {
    if (at(key).is_null()) return std::nullopt;
    return number(key);
  }

  Duration duration(const char* key) const {
    const auto& value = at(key);
    if (!value.is_number_integer()) throw ValidationError(path_of(key), "expected integer microseconds");
    return Duration{value.get<std::int64_t>()};
  }

  std::uint64_t count(const char* key) const {
    const auto& value = at(key);
    if (!value.is_number_unsigned()) throw ValidationError(path_of(key), "expected a non-negative integer");
    return value.get<std::uint64_t>();
  }

  bool boolean(const char* key) const {
    const auto& value = at(key);
    if (!value.is_boolean()) throw ValidationError(path_of(key), "expected a boolean");
    return value.get<bool>();
  }

  Reader child(const char* key) const { return Reader(at(key), path_of(key)); }

 private:
  const nlohmann::json& node_;
  std::string path_;
};

DurationStats stats_from(const Reader& r) {
  DurationStats stats;
  stats.count = r.count("count");
  stats.mean = r.duration("mean_us");
  stats.min = r.duration("min_us");
  stats.max = r.duration("max_us");
  stats.p95 = r.duration("p95_us");
  stats.variance_s2 = r.number("variance_s2");
  const auto& samples = r.at("samples_us");
  if (!samples.is_array()) throw ValidationError(r.path_of("samples_us"), "expected an array");
  for (const auto& s : samples) {
    if (!s.is_number_integer()) throw ValidationError(r.path_of("samples_us"), "expected integer microseconds");
    stats.samples.emplace_back(s.get<std::int64_t>());
  }
  return stats;
}

KillChainStats chain_from(const Reader& r) {
  KillChainStats chain;
  chain.attempts = r.count("attempts");
  chain.starved = r.count("starved");
  chain.disruptions = r.count("disruptions");
  chain.completions = r.count("completions");
  chain.disruptions_before_detection = r.count("disruptions_before_detection");
  chain.completion_rate = r.optional_number("completion_rate");
  chain.per_binding_completion_rate = r.optional_number("per_binding_completion_rate");
  return chain;
}

Comparison comparison_from(const Reader& r) {
  Comparison c;
  c.scenario = r.string("scenario");
  c.effort_ratio = r.optional_number("effort_ratio");
  c.effort_ratio_unbounded = r.boolean("effort_ratio_unbounded");
  c.completion_rate_with_ada = r.optional_number("completion_rate_with_ada");
  c.completion_rate_baseline = r.optional_number("completion_rate_baseline");
  c.completion_rate_reduction = r.optional_number("completion_rate_reduction");
  c.completion_rate_relative_reduction = r.optional_number("completion_rate_relative_reduction");
  c.availability_delta = r.number("availability_delta");
  c.churn_overhead = r.number("churn_overhead_per_hour");
  c.disruption_delta = r.get<std::int64_t>("disruption_delta");
  return c;
}

MetricsReport metrics_from(const Reader& r) {
  MetricsReport report;
  report.scenario = r.string("scenario");
  report.replication = r.get<int>("replication");
  report.seed = r.count("seed");
  report.horizon = r.duration("horizon_us");
  report.ada_enabled = r.boolean("ada_enabled");
  report.tte = stats_from(r.child("tte"));
  report.dwell = stats_from(r.child("dwell"));
  report.kill_chain = chain_from(r.child("kill_chain"));
  report.effort_ratio = r.optional_number("effort_ratio");
  report.availability = r.number("availability");
  report.max_zero_ready_gap = r.duration("max_zero_ready_gap_us");
  const auto& workloads = r.at("workloads");
  if (!workloads.is_array()) throw ValidationError(r.path_of("workloads"), "expected an array");
  for (std::size_t i = 0; i < workloads.size(); ++i) {
    const Reader w(workloads[i], r.path_of("workloads") + "[" + std::to_string(i) + "]");
    report.workloads.push_back({w.string("workload"), w.number("availability"), w.duration("max_zero_ready_gap_us")});
  }
  report.rotation_count = r.count("rotation_count");
  report.mutation_count = r.count("mutation_count");
  report.controller_action_count = r.count("controller_action_count");
  report.churn_rate = r.number("churn_rate_per_hour");
  return report;
}

AggregateReport aggregate_from(const Reader& r) {
  AggregateReport report;
  report.scenario = r.string("scenario");
  report.seed = r.count("seed");
  report.horizon = r.duration("horizon_us");
  report.ada_enabled = r.boolean("ada_enabled");
  report.replications = r.get<int>("replications");
  const auto& summary = r.at("summary");
  if (!summary.is_object()) throw ValidationError(r.path_of("summary"), "expected an object");
  for (const auto& [key, value] : summary.items()) {
    const Reader entry(value, r.path_of("summary") + "." + key);
    report.summary[key] = MeanCi{entry.count("n"), entry.number("mean"), entry.number("half_width")};
  }
  report.pooled_tte = stats_from(r.child("pooled_tte"));
  report.pooled_dwell = stats_from(r.child("pooled_dwell"));
  report.pooled_kill_chain = chain_from(r.child("pooled_kill_chain"));
  if (!r.at("baseline_comparison").is_null()) report.baseline_comparison = comparison_from(r.child("baseline_comparison"));
  return report;
}

std::string seconds_cell(Duration d) {
  char buffer[48];
  const std::int64_t us = d.count();
  const char* sign = us < 0 ? "-" : "";
  const std::int64_t magnitude = us < 0 ? -us : us;
  std::snprintf(buffer, sizeof buffer, "%s%lld.%06lld", sign, static_cast<long long>(magnitude / 1000000),
                static_cast<long long>(magnitude % 1000000));
  return buffer;
}

std::string real_cell(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::string real_cell(const std::optional<double>& value) { return value ? real_cell(*value) : std::string(); }

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json_text(const MetricsReport& report) {
  Json workloads = Json::array();
  for (const auto& w : report.workloads) {
    workloads.push_back(Json{{"workload", w.workload},
                             {"availability", w.availability},
                             {"max_zero_ready_gap_us", w.max_zero_ready_gap.count()}});
  }
  const Json json{{"report_type", "replication"},
                  {"scenario", report.scenario},
                  {"replication", report.replication},
                  {"seed", report.seed},
                  {"horizon_us", report.horizon.count()},
                  {"ada_enabled", report.ada_enabled},
                  {"tte", stats_json(report.tte)},
                  {"dwell", stats_json(report.dwell)},
                  {"kill_chain", chain_json(report.kill_chain)},
                  {"effort_ratio", optional_number(report.effort_ratio)},
                  {"availability", report.availability},
                  {"max_zero_ready_gap_us", report.max_zero_ready_gap.count()},
                  {"workloads", std::move(workloads)},
                  {"rotation_count", report.rotation_count},
                  {"mutation_count", report.mutation_count},
                  {"controller_action_count", report.controller_action_count},
                  {"churn_rate_per_hour", report.churn_rate}};
  return dump(json);
}

std::string to_json_text(const AggregateReport& report) {
  Json summary = Json::object();
  for (const auto& [key, ci] : report.summary) {
    summary[key] = Json{{"n", ci.n}, {"mean", ci.mean}, {"half_width", ci.half_width}};
  }
  const Json json{{"report_type", "aggregate"},
                  {"scenario", report.scenario},
                  {"seed", report.seed},
                  {"horizon_us", report.horizon.count()},
                  {"ada_enabled", report.ada_enabled},
                  {"replications", report.replications},
                  {"summary", std::move(summary)},
                  {"pooled_tte", stats_json(report.pooled_tte)},
                  {"pooled_dwell", stats_json(report.pooled_dwell)},
                  {"pooled_kill_chain", chain_json(report.pooled_kill_chain)},
                  {"baseline_comparison",
                   report.baseline_comparison ? comparison_json(*report.baseline_comparison) : Json(nullptr)}};
  return dump(json);
}

std::string to_json_text(const Comparison& comparison) { return dump(comparison_json(comparison)); }

ReportDocument report_from_json_text(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("report is not valid JSON: ") + e.what());
  }
  const Reader reader(json, "");
  const std::string type = reader.string("report_type");
  if (type == "replication") return metrics_from(reader);
  if (type == "aggregate") return aggregate_from(reader);
  throw ValidationError("report_type", "expected 'replication' or 'aggregate', found '" + type + "'");
}

Comparison compare(const ReportDocument& with_ada, const ReportDocument& baseline) {
  if (with_ada.index() != baseline.index()) {
    throw IncompatibleReports("cannot compare a replication report with an aggregate report");
  }
  if (const auto* a = std::get_if<MetricsReport>(&with_ada)) return compare(*a, std::get<MetricsReport>(baseline));
  return compare(std::get<AggregateReport>(with_ada), std::get<AggregateReport>(baseline));
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> kColumns{
      "scenario",        "replication",  "seed",         "ada_enabled",
      "tte_count",       "tte_mean_s",   "tte_min_s",    "tte_max_s",
      "tte_p95_s",       "dwell_count",  "dwell_mean_s", "dwell_min_s",
      "dwell_max_s",     "dwell_p95_s",  "attempts",     "starved",
      "disruptions",     "completions",  "disruptions_before_detection",
      "completion_rate", "per_binding_completion_rate",  "availability",
      "max_zero_ready_gap_s",            "rotation_count",
      "mutation_count",  "controller_action_count",      "churn_rate_per_hour"};
  return kColumns;
}

std::string to_csv(const std::vector<MetricsReport>& reports) {
  std::string out;
  for (const auto& column : csv_columns()) out += (out.empty() ? "" : ",") + column;
  out += '\n';
  for (const auto& r : reports) {
    const std::vector<std::string> cells{csv_escape(r.scenario),
                                         std::to_string(r.replication),
                                         std::to_string(r.seed),
                                         r.ada_enabled ? "true" : "false",
                                         std::to_string(r.tte.count),
                                         seconds_cell(r.tte.mean),
                                         seconds_cell(r.tte.min),
                                         seconds_cell(r.tte.max),
                                         seconds_cell(r.tte.p95),
                                         std::to_string(r.dwell.count),
                                         seconds_cell(r.dwell.mean),
                                         seconds_cell(r.dwell.min),
                                         seconds_cell(r.dwell.max),
                                         seconds_cell(r.dwell.p95),
                                         std::to_string(r.kill_chain.attempts),
                                         std::to_string(r.kill_chain.starved),
                                         std::to_string(r.kill_chain.disruptions),
                                         std::to_string(r.kill_chain.completions),
                                         std::to_string(r.kill_chain.disruptions_before_detection),
                                         real_cell(r.kill_chain.completion_rate),
                                         real_cell(r.kill_chain.per_binding_completion_rate),
                                         real_cell(r.availability),
                                         seconds_cell(r.max_zero_ready_gap),
                                         std::to_string(r.rotation_count),
                                         std::to_string(r.mutation_count),
                                         std::to_string(r.controller_action_count),
                                         real_cell(r.churn_rate)};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace ada
