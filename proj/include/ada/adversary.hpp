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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ada/cluster.hpp"
#include "ada/policy.hpp"
#include "ada/rng.hpp"
#include "ada/time.hpp"

namespace ada {

struct Deterministic {
  Duration value{0};
  bool operator==(const Deterministic&) const = default;
};
struct Exponential {
  Duration mean{0};
  bool operator==(const Exponential&) const = default;
};
struct Uniform {
  Duration lo{0};
  Duration hi{0};
  bool operator==(const Uniform&) const = default;
};

using DurationDist = std::variant<Deterministic, Exponential, Uniform>;

// Samples are rounded to the nearest microsecond.
Duration sample(const DurationDist& dist, Rng& rng);
double mean_seconds(const DurationDist& dist);

struct StageSpec {
  std::string name;
  DurationDist duration;
  bool operator==(const StageSpec&) const = default;
};

struct AtTime {
  Duration at{0};
  bool operator==(const AtTime&) const = default;
};
// Attempts arrive as a Poisson process; busy periods drop arrivals.
struct PoissonArrival {
  double rate_per_second = 0.0;
  bool operator==(const PoissonArrival&) const = default;
};

using Arrival = std::variant<AtTime, PoissonArrival>;

struct AttackerConfig {
  Arrival arrival = AtTime{};
  std::vector<StageSpec> kill_chain;
  DurationDist retry_delay = Deterministic{};
  LabelSelector target_selector;
  // A pod whose gpu limit is "0" cannot be compromised.
  bool requires_gpu = false;
  // After completing the chain the attacker starts over instead of stopping.
  bool repeat_after_completion = false;
  // Completed stages survive rotation (persistent volume remnants).
  bool remnants_survive_rotation = false;

  bool operator==(const AttackerConfig&) const = default;
};

// Stage durations and means must be positive, Uniform needs lo < hi; the
// retry delay may be zero.
void validate(const AttackerConfig& config, const std::string& path);

struct Binding {
  PodUid pod{};
  std::size_t stage_index = 0;
  Timestamp stage_completes_at{};
  Timestamp established_at{};
  std::uint64_t serial = 0;
};

struct AttackerState {
  std::optional<Binding> binding;
  std::uint64_t attempts = 0;
  std::uint64_t starved = 0;  // attempts that found no eligible pod
  std::uint64_t disruptions = 0;
  std::uint64_t completions = 0;
  std::vector<Duration> dwell_samples;
  bool stopped = false;
  // Waiting for the next PodReady instead of a timer.
  bool parked = false;
  std::uint64_t attempt_generation = 0;
  std::uint64_t next_binding_serial = 1;
  std::size_t carried_stages = 0;

  bool bound() const { return binding.has_value(); }
  // attempts = completions + disruptions + bound + starved.
  bool conserved() const;
};

bool pod_eligible(const AttackerConfig& config, const PodInstance& pod);

// Schedules the first attempt per config.arrival.
void schedule_arrival(AttackerState& attacker, const AttackerConfig& config, ClusterState& state);

// Binds to a uniformly random eligible Running pod. On failure counts a
// starved attempt and schedules the retry.
bool attempt_compromise(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at);

// Rotation of the bound pod wipes all progress on it.
void on_pod_terminated(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, PodUid uid,
                       Timestamp at);

void on_pod_ready(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at);

// Completes the current stage; binding serial guards against stale timers.
void advance(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at);

// Dispatches attacker timers; returns false for other actions.
bool fire(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, const TimerAction& action);

}  // namespace ada
