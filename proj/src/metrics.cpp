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

#include "ada/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ada/controller.hpp"
#include "ada/errors.hpp"

namespace ada {

DurationStats summarize(std::vector<Duration> samples) {
  DurationStats stats;
  stats.count = samples.size();
  if (samples.empty()) return stats;
  std::int64_t total = 0;
  double mean_s = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    total += samples[i].count();
    const double x = to_seconds(samples[i]);
    const double delta = x - mean_s;
    mean_s += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean_s);
  }
  const auto n = static_cast<std::int64_t>(samples.size());
  // Samples are non-negative, so this rounds half up.
  stats.mean = Duration{(total + n / 2) / n};
  stats.variance_s2 = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  std::vector<Duration> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
  stats.p95 = sorted[std::max<std::size_t>(rank, 1) - 1];
  stats.samples = std::move(samples);
  return stats;
}

namespace {

struct PodRecord {
  std::string workload;
  Timestamp created{};
  bool ready = false;
  bool terminating = false;
  bool terminated = false;
  std::string termination_reason;
};

struct OpenBinding {
  std::string pod;
  Timestamp established{};
};

[[noreturn]] void malformed(const ClusterEvent& event, const std::string& what) {
  throw MalformedLog("event seq " + std::to_string(event.seq) + " (" + std::string(to_string(event.kind)) + " " +
                     event.subject + "): " + what);
}

// Integrates the ready-count step function of every workload.
class AvailabilityTracker {
 public:
  explicit AvailabilityTracker(const ScenarioScript& script) {
    for (const auto& w : script.workloads) {
      State state;
      state.replicas = w.replicas;
      states_.emplace(w.name, state);
    }
  }

  bool knows(const std::string& workload) const { return states_.count(workload) != 0; }

  void change(const std::string& workload, int delta) { states_.at(workload).ready += delta; }

  // Accounts for the interval [from, to) with the current counts.
  void hold(Timestamp from, Timestamp to) {
    if (to <= from) return;
    const Duration span = to - from;
    bool all_ok = true;
    for (auto& [name, s] : states_) {
      if (s.ready < s.replicas) {
        s.unsatisfied += span;
        all_ok = false;
      }
      if (s.ready == 0) {
        s.current_gap += span;
        s.max_gap = std::max(s.max_gap, s.current_gap);
      } else {
        s.current_gap = Duration::zero();
      }
    }
    if (!all_ok) any_unsatisfied_ += span;
  }

  void finish(MetricsReport& report, Duration horizon) const {
    const double h = static_cast<double>(horizon.count());
    for (const auto& [name, s] : states_) {
      report.workloads.push_back({name, 1.0 - static_cast<double>(s.unsatisfied.count()) / h, s.max_gap});
      report.max_zero_ready_gap = std::max(report.max_zero_ready_gap, s.max_gap);
    }
    report.availability = 1.0 - static_cast<double>(any_unsatisfied_.count()) / h;
  }

 private:
  struct State {
    int replicas = 0;
    int ready = 0;
    Duration unsatisfied{0};
    Duration current_gap{0};
    Duration max_gap{0};
  };
  std::map<std::string, State> states_;
  Duration any_unsatisfied_{0};
};

}  // namespace

MetricsReport compute_report(const EventLog& log, const ScenarioScript& script, int replication) {
  MetricsReport report;
  report.scenario = script.name;
  report.replication = replication;
  report.seed = script.seed + static_cast<std::uint64_t>(replication);
  report.horizon = script.horizon;
  report.ada_enabled = script.ada_enabled;

  const Timestamp end = kEpoch + script.horizon;
  const std::string scheduled(to_string(RotationCause::ScheduledInterval));
  std::unordered_map<std::string, PodRecord> pods;
  std::optional<OpenBinding> binding;
  std::vector<Duration> tte;
  std::vector<Duration> dwell;
  AvailabilityTracker availability(script);
  Timestamp segment_start = kEpoch;
  auto& chain = report.kill_chain;

  const auto entries = log.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ClusterEvent& event = entries[i];
    if (event.seq != i) malformed(event, "sequence number out of order");
    if (event.time < kEpoch || event.time > end) malformed(event, "time outside [0, horizon]");
    if (i > 0 && event.time < entries[i - 1].time) malformed(event, "time decreases");
    availability.hold(segment_start, event.time);
    segment_start = std::max(segment_start, event.time);

    switch (event.kind) {
      case EventKind::PodCreated: {
        const std::string& workload = event.get("workload");
        if (!availability.knows(workload)) malformed(event, "unknown workload '" + workload + "'");
        if (!pods.emplace(event.subject, PodRecord{workload, event.time, false, false, false, {}}).second) malformed(event, "duplicate pod");
        break;
      }
      case EventKind::PodReady: {
        const auto it = pods.find(event.subject);
        if (it == pods.end()) malformed(event, "pod was never created");
        if (it->second.ready || it->second.terminating) malformed(event, "pod cannot become ready");
        it->second.ready = true;
        availability.change(it->second.workload, +1);
        break;
      }
      case EventKind::PodTerminating: {
        const auto it = pods.find(event.subject);
        if (it == pods.end()) malformed(event, "pod was never created");
        if (it->second.terminating) malformed(event, "pod is already terminating");
        it->second.terminating = true;
        it->second.termination_reason = event.get("reason");
        if (it->second.ready) availability.change(it->second.workload, -1);
        break;
      }
      case EventKind::PodTerminated: {
        const auto it = pods.find(event.subject);
        if (it == pods.end() || !it->second.terminating || it->second.terminated) {
          malformed(event, "termination without a matching PodTerminating");
        }
        it->second.terminated = true;
        if (it->second.termination_reason == scheduled) tte.push_back(event.time - it->second.created);
        break;
      }
      case EventKind::RotationTriggered:
        ++report.rotation_count;
        ++report.controller_action_count;
        break;
      case EventKind::MutationTriggered:
        ++report.controller_action_count;
        break;
      case EventKind::TemplateMutated:
        ++report.mutation_count;
        break;
      case EventKind::TelemetryReceived:
        break;
      case EventKind::CompromiseAttemptFailed:
        if (binding) malformed(event, "attempt while bound");
        ++chain.attempts;
        ++chain.starved;
        break;
      case EventKind::CompromiseEstablished: {
        if (binding) malformed(event, "compromise while already bound");
        const auto it = pods.find(event.subject);
        if (it == pods.end() || it->second.terminating) malformed(event, "target pod is not live");
        ++chain.attempts;
        binding = OpenBinding{event.subject, event.time};
        break;
      }
      case EventKind::KillChainStageCompleted:
        if (!binding || binding->pod != event.subject) malformed(event, "stage completed without a binding");
        break;
      case EventKind::CompromiseDisrupted: {
        if (!binding || binding->pod != event.subject) malformed(event, "disruption without a binding");
        ++chain.disruptions;
        if (pods.at(event.subject).termination_reason == scheduled) ++chain.disruptions_before_detection;
        dwell.push_back(event.time - binding->established);
        binding.reset();
        break;
      }
      case EventKind::KillChainCompleted:
        if (!binding || binding->pod != event.subject) malformed(event, "completion without a binding");
        ++chain.completions;
        dwell.push_back(event.time - binding->established);
        binding.reset();
        break;
    }
  }
  availability.hold(segment_start, end);
  availability.finish(report, script.horizon);

  report.tte = summarize(std::move(tte));
  report.dwell = summarize(std::move(dwell));
  if (chain.attempts > 0) {
    chain.completion_rate = static_cast<double>(chain.completions) / static_cast<double>(chain.attempts);
  }
  if (chain.completions + chain.disruptions > 0) {
    chain.per_binding_completion_rate =
        static_cast<double>(chain.completions) / static_cast<double>(chain.completions + chain.disruptions);
  }
  report.churn_rate = static_cast<double>(report.rotation_count) / (to_seconds(script.horizon) / 3600.0);
  return report;
}

MeanCi mean_ci(const std::vector<double>& values) {
  MeanCi ci;
  ci.n = values.size();
  if (values.empty()) return ci;
  double sum = 0.0;
  for (const double v : values) sum += v;
  ci.mean = sum / static_cast<double>(ci.n);
  if (ci.n < 2) return ci;
  double ss = 0.0;
  for (const double v : values) ss += (v - ci.mean) * (v - ci.mean);
  const double sd = std::sqrt(ss / static_cast<double>(ci.n - 1));
  ci.half_width = 1.96 * sd / std::sqrt(static_cast<double>(ci.n));
  return ci;
}

namespace {

void finish_rates(KillChainStats& chain) {
  chain.completion_rate.reset();
  chain.per_binding_completion_rate.reset();
  if (chain.attempts > 0) {
    chain.completion_rate = static_cast<double>(chain.completions) / static_cast<double>(chain.attempts);
  }
  if (chain.completions + chain.disruptions > 0) {
    chain.per_binding_completion_rate =
        static_cast<double>(chain.completions) / static_cast<double>(chain.completions + chain.disruptions);
  }
}

}  // namespace

AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to aggregate");
  AggregateReport out;
  const MetricsReport& first = reports.front();
  out.scenario = first.scenario;
  out.seed = first.seed - static_cast<std::uint64_t>(first.replication);
  out.horizon = first.horizon;
  out.ada_enabled = first.ada_enabled;
  out.replications = static_cast<int>(reports.size());

  std::map<std::string, std::vector<double>> columns;
  std::vector<Duration> tte;
  std::vector<Duration> dwell;
  for (const auto& r : reports) {
    if (r.scenario != out.scenario || r.horizon != out.horizon || r.ada_enabled != out.ada_enabled) {
      throw std::invalid_argument("reports from different runs cannot be aggregated");
    }
    if (r.tte.count > 0) columns["tte_mean_s"].push_back(to_seconds(r.tte.mean));
    if (r.dwell.count > 0) columns["dwell_mean_s"].push_back(to_seconds(r.dwell.mean));
    columns["attempts"].push_back(static_cast<double>(r.kill_chain.attempts));
    columns["disruptions"].push_back(static_cast<double>(r.kill_chain.disruptions));
    columns["completions"].push_back(static_cast<double>(r.kill_chain.completions));
    if (r.kill_chain.completion_rate) columns["completion_rate"].push_back(*r.kill_chain.completion_rate);
    if (r.kill_chain.per_binding_completion_rate) {
      columns["per_binding_completion_rate"].push_back(*r.kill_chain.per_binding_completion_rate);
    }
    columns["availability"].push_back(r.availability);
    columns["max_zero_ready_gap_s"].push_back(to_seconds(r.max_zero_ready_gap));
    columns["rotation_count"].push_back(static_cast<double>(r.rotation_count));
    columns["mutation_count"].push_back(static_cast<double>(r.mutation_count));
    columns["churn_rate"].push_back(r.churn_rate);

    tte.insert(tte.end(), r.tte.samples.begin(), r.tte.samples.end());
    dwell.insert(dwell.end(), r.dwell.samples.begin(), r.dwell.samples.end());
    auto& pooled = out.pooled_kill_chain;
    pooled.attempts += r.kill_chain.attempts;
    pooled.starved += r.kill_chain.starved;
    pooled.disruptions += r.kill_chain.disruptions;
    pooled.completions += r.kill_chain.completions;
    pooled.disruptions_before_detection += r.kill_chain.disruptions_before_detection;
  }
  for (const auto& [key, values] : columns) out.summary[key] = mean_ci(values);
  out.pooled_tte = summarize(std::move(tte));
  out.pooled_dwell = summarize(std::move(dwell));
  finish_rates(out.pooled_kill_chain);
  return out;
}

namespace {

struct CompareView {
  std::string scenario;
  Duration horizon{0};
  const KillChainStats* chain = nullptr;
  double availability = 1.0;
  double churn = 0.0;
};

Comparison compare_views(const CompareView& ada, const CompareView& base) {
  if (ada.scenario != base.scenario) {
    throw IncompatibleReports("reports come from different scenarios ('" + ada.scenario + "' vs '" + base.scenario +
                              "')");
  }
  if (ada.horizon != base.horizon) throw IncompatibleReports("reports use different horizons");
  Comparison c;
  c.scenario = ada.scenario;
  const KillChainStats& a = *ada.chain;
  const KillChainStats& b = *base.chain;
  if (b.completions > 0 && b.attempts > 0) {
    if (a.completions > 0) {
      const double ada_apc = static_cast<double>(a.attempts) / static_cast<double>(a.completions);
      const double base_apc = static_cast<double>(b.attempts) / static_cast<double>(b.completions);
      c.effort_ratio = ada_apc / base_apc;
    } else {
      c.effort_ratio_unbounded = true;
    }
  }
  c.completion_rate_with_ada = a.completion_rate;
  c.completion_rate_baseline = b.completion_rate;
  if (a.completion_rate && b.completion_rate) {
    c.completion_rate_reduction = *b.completion_rate - *a.completion_rate;
    if (*b.completion_rate > 0.0) c.completion_rate_relative_reduction = *c.completion_rate_reduction / *b.completion_rate;
  }
  c.availability_delta = ada.availability - base.availability;
  c.churn_overhead = ada.churn - base.churn;
  c.disruption_delta = static_cast<std::int64_t>(a.disruptions) - static_cast<std::int64_t>(b.disruptions);
  return c;
}

}  // namespace

Comparison compare(const MetricsReport& with_ada, const MetricsReport& baseline) {
  return compare_views({with_ada.scenario, with_ada.horizon, &with_ada.kill_chain, with_ada.availability,
                        with_ada.churn_rate},
                       {baseline.scenario, baseline.horizon, &baseline.kill_chain, baseline.availability,
                        baseline.churn_rate});
}

Comparison compare(const AggregateReport& with_ada, const AggregateReport& baseline) {
  auto mean_of = [](const AggregateReport& r, const char* key, double fallback) {
    const auto it = r.summary.find(key);
    return it == r.summary.end() || it->second.n == 0 ? fallback : it->second.mean;
  };
  return compare_views({with_ada.scenario, with_ada.horizon, &with_ada.pooled_kill_chain,
                        mean_of(with_ada, "availability", 1.0), mean_of(with_ada, "churn_rate", 0.0)},
                       {baseline.scenario, baseline.horizon, &baseline.pooled_kill_chain,
                        mean_of(baseline, "availability", 1.0), mean_of(baseline, "churn_rate", 0.0)});
}

}  // namespace ada
