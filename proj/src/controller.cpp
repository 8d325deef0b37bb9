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

#include "ada/controller.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ada/errors.hpp"

namespace ada {

std::string_view to_string(RotationCause cause) {
  switch (cause) {
    case RotationCause::ScheduledInterval:
      return "ScheduledInterval";
    case RotationCause::TelemetryTrigger:
      return "TelemetryTrigger";
    case RotationCause::EmergencyAnomaly:
      return "EmergencyAnomaly";
  }
  return "Unknown";
}

std::optional<RotationCause> rotation_cause_from_string(std::string_view text) {
  for (const auto cause :
       {RotationCause::ScheduledInterval, RotationCause::TelemetryTrigger, RotationCause::EmergencyAnomaly}) {
    if (to_string(cause) == text) return cause;
  }
  return std::nullopt;
}

void validate(const ControllerConfig& config) {
  std::set<std::string_view> names;
  for (const auto& policy : config.rotation_policies) {
    validate(policy);
    if (!names.insert(policy.name).second) {
      throw ValidationError("rotationPolicies", "duplicate policy name '" + policy.name + "'");
    }
  }
  names.clear();
  for (const auto& policy : config.mutation_policies) {
    validate(policy);
    if (!names.insert(policy.name).second) {
      throw ValidationError("mutationPolicies", "duplicate policy name '" + policy.name + "'");
    }
  }
  if (config.reconcile_jitter < Duration::zero()) {
    throw ValidationError("reconcileJitter", "must be non-negative");
  }
}

const RotationPolicy* governing_policy(const ControllerConfig& config, const WorkloadSpec& workload) {
  for (const auto& policy : config.rotation_policies) {
    if (selector_matches(policy.selector, workload.pod_template.labels)) return &policy;
  }
  return nullptr;
}

namespace {

Duration effective_interval(const ControllerConfig& config, const RotationPolicy& policy, std::string_view workload,
                            Timestamp now) {
  if (!config.risk_signal) return policy.rotation_interval;
  const double factor = std::clamp(config.risk_signal(workload, now), 0.0, 1.0);
  const auto scaled = static_cast<std::int64_t>(std::llround(static_cast<double>(policy.rotation_interval.count()) * factor));
  return Duration{std::max<std::int64_t>(scaled, 1)};
}

Timestamp round_up(Timestamp t, Duration period) {
  if (period <= Duration::zero()) return t;
  const auto us = us_of(t);
  const auto p = period.count();
  const auto remainder = us % p;
  return remainder == 0 ? t : at_us(us - remainder + p);
}

const RotationPolicy& default_policy() {
  static const RotationPolicy kDefault{"default", {}, Duration{1}, RotationStrategy::RollingUpdate, 1, 0};
  return kDefault;
}

}  // namespace

std::optional<RotationDecision> next_due_rotation(const ControllerConfig& config, const ClusterState& state) {
  std::optional<RotationDecision> best;
  // Workloads iterate in name order, so strict < keeps the smaller name on ties.
  for (const auto& [name, workload] : state.workloads()) {
    if (workload.active_rollout) continue;
    const RotationPolicy* policy = governing_policy(config, workload.spec);
    if (policy == nullptr) continue;
    std::optional<Timestamp> oldest;
    for (const PodUid uid : state.live_pods(name)) {
      const auto& pod = state.pod(uid);
      if (pod.phase == PodPhase::Pending || pod.phase == PodPhase::Running) {
        oldest = pod.created_at;
        break;
      }
    }
    if (!oldest) continue;
    const Timestamp due =
        round_up(*oldest + effective_interval(config, *policy, name, state.clock()), config.reconcile_jitter);
    if (!best || due < best->due_at) {
      best = RotationDecision{name, due, RotationCause::ScheduledInterval, policy->name};
    }
  }
  return best;
}

ReplacementPairs execute_rotation(const ControllerConfig& config, ClusterState& state,
                                  const RotationDecision& decision) {
  if (decision.due_at > state.clock()) {
    throw std::logic_error("rotation of '" + decision.workload + "' executed before it is due");
  }
  const auto& workload = state.workload(decision.workload);
  const RotationPolicy* governing = governing_policy(config, workload.spec);
  const RotationPolicy& policy = governing != nullptr ? *governing : default_policy();
  const bool revert = config.revert_mutations_on_rotation && decision.cause == RotationCause::ScheduledInterval;
  const PodTemplate next_template = revert ? workload.original_template : workload.spec.pod_template;

  state.log().append(state.clock(), EventKind::RotationTriggered, decision.workload,
                     {{"cause", std::string(to_string(decision.cause))},
                      {"policy", decision.policy_name},
                      {"due_us", std::to_string(us_of(decision.due_at))},
                      {"strategy", std::string(to_string(policy.strategy))},
                      {"template_hash", template_hash(next_template)}});
  return state.rolling_replace(decision.workload, next_template, policy, to_string(decision.cause));
}

PodTemplate apply_mutations(const PodTemplate& pod_template, std::span<const MutationSpec> mutations) {
  PodTemplate out = pod_template;
  for (const auto& mutation : mutations) {
    if (container_of(mutation) != out.container_name) {
      throw ContainerMismatch("mutation " + std::string(mutation_type_name(mutation)) + " targets container '" +
                              container_of(mutation) + "' but the template has '" + out.container_name + "'");
    }
    if (const auto* image = std::get_if<ContainerImageUpdate>(&mutation)) {
      out.image = image->new_image;
    } else if (const auto* resources = std::get_if<ResourceAdjustment>(&mutation)) {
      for (const auto& [key, quantity] : resources->limits) out.resource_limits[key] = quantity;
      for (const auto& [key, quantity] : resources->requests) out.resource_requests[key] = quantity;
    } else if (const auto* patch = std::get_if<EnvPatch>(&mutation)) {
      for (const auto& [key, value] : patch->env) {
        const auto it = std::find_if(out.env.begin(), out.env.end(), [&](const auto& kv) { return kv.first == key; });
        if (it != out.env.end()) {
          it->second = value;
        } else {
          out.env.emplace_back(key, value);
        }
      }
    }
  }
  return out;
}

namespace {

std::string join_labels(const Labels& labels) {
  std::string out;
  for (const auto& [k, v] : labels) {
    if (!out.empty()) out += ',';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

std::vector<RotationDecision> handle_telemetry_event(const ControllerConfig& config, ClusterState& state,
                                                     const TelemetryEvent& event) {
  state.log().append(state.clock(), EventKind::TelemetryReceived, event.identifier,
                     {{"source", std::string(to_string(event.source_kind))},
                      {"target_labels", join_labels(event.target_labels)}});

  std::vector<RotationDecision> decisions;
  const LabelSelector attribution{event.target_labels};
  for (const auto& policy : config.mutation_policies) {
    if (!trigger_fires(policy, event)) continue;

    std::vector<std::pair<std::string, PodTemplate>> mutated;
    std::string skipped;
    for (const auto& [name, workload] : state.workloads()) {
      const auto& labels = workload.spec.pod_template.labels;
      if (!selector_matches(policy.selector, labels) || !selector_matches(attribution, labels)) continue;
      try {
        mutated.emplace_back(name, apply_mutations(workload.spec.pod_template, policy.mutations));
      } catch (const ContainerMismatch&) {
        skipped += skipped.empty() ? name : "," + name;
      }
    }

    std::string names;
    for (const auto& entry : mutated) names += names.empty() ? entry.first : "," + entry.first;
    EventDetail detail{{"source", std::string(to_string(event.source_kind))},
                       {"identifier", event.identifier},
                       {"workloads", names}};
    if (!skipped.empty()) detail["skipped_container_mismatch"] = skipped;
    state.log().append(state.clock(), EventKind::MutationTriggered, policy.name, std::move(detail));

    for (auto& [name, pod_template] : mutated) {
      const std::string before = template_hash(state.workload(name).spec.pod_template);
      const std::string after = template_hash(pod_template);
      const std::string image = pod_template.image;
      state.set_template(name, std::move(pod_template));
      state.log().append(state.clock(), EventKind::TemplateMutated, name,
                         {{"policy", policy.name}, {"from_hash", before}, {"to_hash", after}, {"image", image}});
      const bool already = std::any_of(decisions.begin(), decisions.end(),
                                       [&](const RotationDecision& d) { return d.workload == name; });
      if (!already) decisions.push_back({name, state.clock(), RotationCause::TelemetryTrigger, policy.name});
    }
  }
  return decisions;
}

}  // namespace ada
