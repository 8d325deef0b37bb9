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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ada/telemetry.hpp"
#include "ada/time.hpp"

namespace ada {

inline constexpr std::string_view kApiVersion = "ADA.security.r6.dev/v1";
inline constexpr std::string_view kGpuResource = "nvidia.com/gpu";

using ResourceList = std::map<std::string, std::string>;
using EnvList = std::vector<std::pair<std::string, std::string>>;

struct LabelSelector {
  Labels match_labels;

  bool operator==(const LabelSelector&) const = default;
};

enum class RotationStrategy { RollingUpdate, Recreate };

std::string_view to_string(RotationStrategy strategy);
std::optional<RotationStrategy> rotation_strategy_from_string(std::string_view text);

struct RotationPolicy {
  std::string name;
  LabelSelector selector;
  Duration rotation_interval{0};
  RotationStrategy strategy = RotationStrategy::RollingUpdate;
  int max_surge = 1;
  int max_unavailable = 0;

  bool operator==(const RotationPolicy&) const = default;
};

struct TriggerSpec {
  TelemetrySource source_kind = TelemetrySource::PrometheusAlert;
  // Alert name for PrometheusAlert, constraint name for GatekeeperViolation.
  std::string identifier;

  bool operator==(const TriggerSpec&) const = default;
};

struct ContainerImageUpdate {
  std::string container_name;
  std::string new_image;

  bool operator==(const ContainerImageUpdate&) const = default;
};

// Quantities are opaque strings ("500m", "256Mi", "0").
struct ResourceAdjustment {
  std::string container_name;
  ResourceList limits;
  ResourceList requests;

  bool operator==(const ResourceAdjustment&) const = default;
};

struct EnvPatch {
  std::string container_name;
  EnvList env;

  bool operator==(const EnvPatch&) const = default;
};

using MutationSpec = std::variant<ContainerImageUpdate, ResourceAdjustment, EnvPatch>;

const std::string& container_of(const MutationSpec& mutation);
std::string_view mutation_type_name(const MutationSpec& mutation);

struct ContextMutationPolicy {
  std::string name;
  LabelSelector selector;
  std::vector<TriggerSpec> triggers;
  std::vector<MutationSpec> mutations;  // document order

  bool operator==(const ContextMutationPolicy&) const = default;
};

using PolicyDocument = std::variant<RotationPolicy, ContextMutationPolicy>;

// Parsing is strict: unknown keys, duplicate keys and wrong kinds are
// rejected. Throws SyntaxError or ValidationError.
RotationPolicy parse_rotation_policy(std::string_view doc);
ContextMutationPolicy parse_mutation_policy(std::string_view doc);

// Accepts a stream of one or more "---"-separated documents of either kind.
std::vector<PolicyDocument> parse_policy_documents(std::string_view text);

// Emits the indented key-value layout used by the shipped fixtures.
std::string serialize(const RotationPolicy& policy);
std::string serialize(const ContextMutationPolicy& policy);

// Throw ValidationError naming the first violated field.
void validate(const RotationPolicy& policy);
void validate(const ContextMutationPolicy& policy);
void validate(const LabelSelector& selector, const std::string& path);

bool selector_matches(const LabelSelector& selector, const Labels& labels);

// OR over triggers: any trigger with the same source and identifier fires.
bool trigger_fires(const ContextMutationPolicy& policy, const TelemetryEvent& event);

}  // namespace ada
