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

#include "ada/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "ada/controller.hpp"

namespace ada {

namespace {

class Runner {
 public:
  Runner(const ScenarioScript& script, std::uint64_t seed)
      : script_(script),
        config_(script.ada_enabled ? script.controller_config() : ControllerConfig{}),
        state_(seed, script.cluster) {}

  SimulationOutcome run() {
    for (const auto& workload : script_.workloads) state_.add_workload(workload);
    for (std::size_t i = 0; i < script_.telemetry_timeline.size(); ++i) {
      state_.timers().push(script_.telemetry_timeline[i].time, timer::Telemetry{i});
    }
    if (script_.ada_enabled) {
      for (std::size_t i = 0; i < script_.emergency_rotations.size(); ++i) {
        state_.timers().push(script_.emergency_rotations[i].time, timer::EmergencyRotation{i});
      }
    }
    if (script_.attacker) schedule_arrival(attacker_, *script_.attacker, state_);
    drain_log();
    reschedule_controller();

    const Timestamp end = kEpoch + script_.horizon;
    auto& timers = state_.timers();
    while (!timers.empty() && timers.top().at <= end) {
      auto entry = timers.pop();
      state_.advance_clock(entry.at);
      dispatch(entry.action);
      drain_log();
      reschedule_controller();
    }
    state_.advance_clock(std::max(state_.clock(), end));
    return SimulationOutcome{state_.event_log(), attacker_};
  }

 private:
  void dispatch(const TimerAction& action) {
    if (state_.fire(action)) return;
    if (const auto* wake = std::get_if<timer::ControllerWake>(&action)) {
      if (wake->generation != wake_generation_) return;
      scheduled_due_.reset();
      const auto decision = next_due_rotation(config_, state_);
      if (decision && decision->due_at <= state_.clock()) execute_rotation(config_, state_, *decision);
      return;
    }
    if (const auto* telemetry = std::get_if<timer::Telemetry>(&action)) {
      const auto decisions = handle_telemetry_event(config_, state_, script_.telemetry_timeline[telemetry->index]);
      for (const auto& decision : decisions) {
        execute_rotation(config_, state_, decision);
        drain_log();
      }
      return;
    }
    if (const auto* emergency = std::get_if<timer::EmergencyRotation>(&action)) {
      const auto& name = script_.emergency_rotations[emergency->index].workload;
      const RotationPolicy* policy = governing_policy(config_, state_.workload(name).spec);
      execute_rotation(config_, state_,
                       {name, state_.clock(), RotationCause::EmergencyAnomaly, policy ? policy->name : "default"});
      return;
    }
    if (script_.attacker) fire(attacker_, *script_.attacker, state_, action);
  }

  // Feeds pod lifecycle events to the attacker; attacker entries appended
  // meanwhile are skipped over on the next pass.
  void drain_log() {
    const EventLog& log = state_.event_log();
    while (drained_ < log.size()) {
      const ClusterEvent event = log[drained_++];
      if (!script_.attacker) continue;
      if (event.kind == EventKind::PodTerminated) {
        on_pod_terminated(attacker_, *script_.attacker, state_, PodUid{std::stoull(event.subject)}, event.time);
      } else if (event.kind == EventKind::PodReady) {
        on_pod_ready(attacker_, *script_.attacker, state_, event.time);
      }
    }
  }

  void reschedule_controller() {
    if (!script_.ada_enabled) return;
    const auto decision = next_due_rotation(config_, state_);
    const std::optional<Timestamp> due = decision ? std::optional(decision->due_at) : std::nullopt;
    if (due == scheduled_due_) return;
    scheduled_due_ = due;
    ++wake_generation_;
    if (due) state_.timers().push(std::max(*due, state_.clock()), timer::ControllerWake{wake_generation_});
  }

  const ScenarioScript& script_;
  ControllerConfig config_;
  ClusterState state_;
  AttackerState attacker_;
  std::size_t drained_ = 0;
  std::uint64_t wake_generation_ = 0;
  std::optional<Timestamp> scheduled_due_;
};

}  // namespace

SimulationOutcome simulate(const ScenarioScript& script, std::uint64_t seed) { return Runner(script, seed).run(); }

ReplicationResult run_replication(const ScenarioScript& script, int replication) {
  const std::uint64_t seed = script.seed + static_cast<std::uint64_t>(replication);
  SimulationOutcome outcome = simulate(script, seed);
  MetricsReport report = compute_report(outcome.log, script, replication);
  return ReplicationResult{replication, seed, std::move(outcome.log), std::move(report)};
}

std::vector<ReplicationResult> run(const ScenarioScript& script, unsigned threads) {
  const auto count = static_cast<std::size_t>(script.replications);
  std::vector<ReplicationResult> results(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> next{0};
  // Per-replication slots keep the reported failure independent of timing.
  std::vector<std::exception_ptr> failures(count);
  auto worker = [&] {
    for (std::size_t r = next++; r < count; r = next++) {
      try {
        results[r] = run_replication(script, static_cast<int>(r));
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return results;
}

ScenarioScript baseline_of(const ScenarioScript& script) {
  ScenarioScript baseline = script;
  baseline.ada_enabled = false;
  return baseline;
}

}  // namespace ada
