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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ada/event_log.hpp"
#include "ada/scenario.hpp"
#include "ada/time.hpp"

namespace ada {

// Summary of a set of durations. All fields are zero when count == 0.
struct DurationStats {
  std::vector<Duration> samples;  // in log order
  std::uint64_t count = 0;
  Duration mean{0};  // rounded to the nearest microsecond
  Duration min{0};
  Duration max{0};
  Duration p95{0};          // nearest rank
  double variance_s2 = 0.0;  // unbiased, in seconds squared

  bool operator==(const DurationStats&) const = default;
};

DurationStats summarize(std::vector<Duration> samples);

struct KillChainStats {
  std::uint64_t attempts = 0;  // established plus starved
  std::uint64_t starved = 0;
  std::uint64_t disruptions = 0;
  std::uint64_t completions = 0;
  // Disruptions caused by scheduled rotation, i.e. with no telemetry
  // detection involved.
  std::uint64_t disruptions_before_detection = 0;
  std::optional<double> completion_rate;              // completions / attempts
  std::optional<double> per_binding_completion_rate;  // completions / (completions + disruptions)

  bool operator==(const KillChainStats&) const = default;
};

struct WorkloadAvailability {
  std::string workload;
  double availability = 1.0;  // fraction of the horizon with ready >= replicas
  Duration max_zero_ready_gap{0};

  bool operator==(const WorkloadAvailability&) const = default;
};

struct MetricsReport {
  std::string scenario;
  int replication = 0;
  std::uint64_t seed = 0;
  Duration horizon{0};
  bool ada_enabled = true;
  DurationStats tte;
  DurationStats dwell;
  KillChainStats kill_chain;
  std::optional<double> effort_ratio;  // set only by a comparison against a baseline
  double availability = 1.0;           // all workloads satisfied at once
  Duration max_zero_ready_gap{0};      // longest gap of any workload
  std::vector<WorkloadAvailability> workloads;
  std::uint64_t rotation_count = 0;
  std::uint64_t mutation_count = 0;  // templates mutated
  std::uint64_t controller_action_count = 0;
  double churn_rate = 0.0;  // rotations per simulated hour

  bool operator==(const MetricsReport&) const = default;
};

// Pure function of (log, script). Throws MalformedLog when events are out of
// order, refer to unknown pods or break the pod and attacker lifecycles.
MetricsReport compute_report(const EventLog& log, const ScenarioScript& script, int replication = 0);

struct MeanCi {
  std::uint64_t n = 0;
  double mean = 0.0;
  double half_width = 0.0;  // 1.96 * sd / sqrt(n); zero when n < 2

  bool operator==(const MeanCi&) const = default;
};

MeanCi mean_ci(const std::vector<double>& values);

struct Comparison {
  std::string scenario;
  std::optional<double> effort_ratio;
  // ADA never completed while the baseline did: the ratio is unbounded.
  bool effort_ratio_unbounded = false;
  std::optional<double> completion_rate_with_ada;
  std::optional<double> completion_rate_baseline;
  std::optional<double> completion_rate_reduction;           // baseline - ada
  std::optional<double> completion_rate_relative_reduction;  // reduction / baseline
  double availability_delta = 0.0;                           // ada - baseline
  double churn_overhead = 0.0;                               // rotations per hour, ada - baseline
  std::int64_t disruption_delta = 0;                         // ada - baseline

  bool operator==(const Comparison&) const = default;
};

struct AggregateReport {
  std::string scenario;
  std::uint64_t seed = 0;
  Duration horizon{0};
  bool ada_enabled = true;
  int replications = 0;
  std::map<std::string, MeanCi> summary;
  DurationStats pooled_tte;
  DurationStats pooled_dwell;
  KillChainStats pooled_kill_chain;
  std::optional<Comparison> baseline_comparison;

  bool operator==(const AggregateReport&) const = default;
};

// Throws std::invalid_argument for an empty list or mixed scenarios.
AggregateReport aggregate(const std::vector<MetricsReport>& reports);

// Throws IncompatibleReports unless both come from the same scenario and
// horizon.
Comparison compare(const MetricsReport& with_ada, const MetricsReport& baseline);
Comparison compare(const AggregateReport& with_ada, const AggregateReport& baseline);

}  // namespace ada
