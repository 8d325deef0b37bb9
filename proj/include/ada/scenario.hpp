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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ada/adversary.hpp"
#include "ada/cluster.hpp"
#include "ada/controller.hpp"
#include "ada/policy.hpp"
#include "ada/telemetry.hpp"
#include "ada/time.hpp"

namespace ada {

// Forced rotation outside the schedule, e.g. from an anomaly detector.
struct EmergencyRotation {
  Timestamp time{};
  std::string workload;

  bool operator==(const EmergencyRotation&) const = default;
};

struct ScenarioScript {
  std::string name;
  Duration horizon{0};
  std::uint64_t seed = 0;
  int replications = 1;
  // false: baseline run, no rotation and no mutation.
  bool ada_enabled = true;
  ClusterConfig cluster;
  std::vector<WorkloadSpec> workloads;
  std::vector<RotationPolicy> rotation_policies;
  std::vector<ContextMutationPolicy> mutation_policies;
  Duration reconcile_jitter{0};
  bool revert_mutations_on_rotation = false;
  std::vector<TelemetryEvent> telemetry_timeline;  // sorted by time
  std::vector<EmergencyRotation> emergency_rotations;
  std::optional<AttackerConfig> attacker;

  ControllerConfig controller_config() const;

  bool operator==(const ScenarioScript&) const = default;
};

void validate(const ScenarioScript& script);

// Parses a Scenario document. Policies may be embedded inline or referenced
// by file; relative references resolve against base_dir.
ScenarioScript load_scenario(std::string_view doc, const std::filesystem::path& base_dir = {});
ScenarioScript load_scenario_file(const std::filesystem::path& path);

// True for a single document of kind Scenario. Throws SyntaxError.
bool is_scenario_document(std::string_view doc);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ada
