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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ada/cluster.hpp"
#include "ada/policy.hpp"
#include "ada/telemetry.hpp"
#include "ada/time.hpp"

namespace ada {

// Optional risk input: returns a factor in (0, 1] that shortens the
// rotation interval of a workload. No scoring model ships with the
// simulator; the hook exists so one can be plugged in.
using RiskSignal = std::function<double(std::string_view workload, Timestamp now)>;

struct ControllerConfig {
  std::vector<RotationPolicy> rotation_policies;
  std::vector<ContextMutationPolicy> mutation_policies;
  // Polling period of the reconcile loop. Due times are rounded up to the
  // next multiple; zero means event-exact firing.
  Duration reconcile_jitter{0};
  // When set, scheduled rotations respawn from the workload's original
  // template instead of the last mutated one.
  bool revert_mutations_on_rotation = false;
  RiskSignal risk_signal;
};

void validate(const ControllerConfig& config);

enum class RotationCause { ScheduledInterval, TelemetryTrigger, EmergencyAnomaly };
std::string_view to_string(RotationCause cause);
std::optional<RotationCause> rotation_cause_from_string(std::string_view text);

struct RotationDecision {
  std::string workload;
  Timestamp due_at{};
  RotationCause cause = RotationCause::ScheduledInterval;
  std::string policy_name;

  bool operator==(const RotationDecision&) const = default;
};

// First rotation policy, in configuration order, whose selector matches the
// workload's template labels.
const RotationPolicy* governing_policy(const ControllerConfig& config, const WorkloadSpec& workload);

// Earliest scheduled rotation across workloads: the oldest live pod's
// created_at plus the governing interval. Ties go to the smaller workload
// name. Workloads mid-rollout are skipped until the rollout settles.
std::optional<RotationDecision> next_due_rotation(const ControllerConfig& config, const ClusterState& state);

ReplacementPairs execute_rotation(const ControllerConfig& config, ClusterState& state,
                                  const RotationDecision& decision);

// Applies mutations in order. Throws ContainerMismatch when a mutation names
// a container the template does not have.
PodTemplate apply_mutations(const PodTemplate& pod_template, std::span<const MutationSpec> mutations);

// Mutates every matched workload template and returns one immediate
// TelemetryTrigger decision per affected workload.
std::vector<RotationDecision> handle_telemetry_event(const ControllerConfig& config, ClusterState& state,
                                                     const TelemetryEvent& event);

}  // namespace ada
