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

#include "ada/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ada/errors.hpp"
#include "yaml_support.hpp"

namespace ada {

ControllerConfig ScenarioScript::controller_config() const {
  ControllerConfig config;
  config.rotation_policies = rotation_policies;
  config.mutation_policies = mutation_policies;
  config.reconcile_jitter = reconcile_jitter;
  config.revert_mutations_on_rotation = revert_mutations_on_rotation;
  return config;
}

void validate(const ScenarioScript& script) {
  if (script.name.empty()) throw ValidationError("metadata.name", "must not be empty");
  if (script.horizon <= Duration::zero()) throw ValidationError("spec.horizon", "horizon must be greater than zero");
  if (script.replications < 1) throw ValidationError("spec.replications", "replications must be at least 1");
  if (script.cluster.ip_pool_size == 0) throw ValidationError("spec.cluster.ipPoolSize", "must be positive");
  if (script.cluster.termination_grace < Duration::zero()) {
    throw ValidationError("spec.cluster.terminationGracePeriod", "must be non-negative");
  }
  if (script.workloads.empty()) throw ValidationError("spec.workloads", "at least one workload is required");
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < script.workloads.size(); ++i) {
    const std::string path = "spec.workloads[" + std::to_string(i) + "]";
    validate(script.workloads[i], path);
    if (!names.insert(script.workloads[i].name).second) {
      throw ValidationError(path + ".name", "duplicate workload '" + script.workloads[i].name + "'");
    }
  }
  validate(script.controller_config());

  const Timestamp end = kEpoch + script.horizon;
  for (std::size_t i = 0; i < script.telemetry_timeline.size(); ++i) {
    const auto& event = script.telemetry_timeline[i];
    const std::string path = "spec.telemetry[" + std::to_string(i) + "]";
    if (event.time < kEpoch || event.time > end) throw ValidationError(path + ".time", "outside [0, horizon]");
    if (event.identifier.empty()) throw ValidationError(path, "identifier must not be empty");
    if (i > 0 && event.time < script.telemetry_timeline[i - 1].time) {
      throw ValidationError("spec.telemetry", "timeline must be sorted by time");
    }
  }
  for (std::size_t i = 0; i < script.emergency_rotations.size(); ++i) {
    const auto& rotation = script.emergency_rotations[i];
    const std::string path = "spec.emergencyRotations[" + std::to_string(i) + "]";
    if (rotation.time < kEpoch || rotation.time > end) throw ValidationError(path + ".time", "outside [0, horizon]");
    if (names.count(rotation.workload) == 0) {
      throw ValidationError(path + ".workload", "unknown workload '" + rotation.workload + "'");
    }
  }
  if (script.attacker) validate(*script.attacker, "spec.attacker");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buffer.str();
}

namespace {

using detail::MapReader;

PodTemplate template_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  PodTemplate t;
  t.container_name = reader.require_string("containerName");
  t.image = reader.require_string("image");
  if (reader.has("startupDelay")) {
    t.startup_delay = detail::duration_value(reader.get("startupDelay"), reader.path_of("startupDelay"));
  }
  if (reader.has("labels")) t.labels = detail::string_map(reader.get("labels"), reader.path_of("labels"));
  if (reader.has("resources")) {
    MapReader resources(reader.get("resources"), reader.path_of("resources"));
    if (resources.has("limits")) {
      t.resource_limits = detail::string_map(resources.get("limits"), resources.path_of("limits"));
    }
    if (resources.has("requests")) {
      t.resource_requests = detail::string_map(resources.get("requests"), resources.path_of("requests"));
    }
    resources.finish();
  }
  if (reader.has("env")) {
    const std::string env_path = reader.path_of("env");
    const auto items = detail::sequence(reader.get("env"), env_path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      MapReader entry(items[i], detail::index_path(env_path, i));
      std::string key = entry.require_string("name");
      std::string value = entry.require_string("value");
      entry.finish();
      t.env.emplace_back(std::move(key), std::move(value));
    }
  }
  reader.finish();
  return t;
}

WorkloadSpec workload_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  WorkloadSpec w;
  w.name = reader.require_string("name");
  if (reader.has("replicas")) {
    const auto replicas = detail::integer_value(reader.get("replicas"), reader.path_of("replicas"));
    if (replicas < 1 || replicas > 100000) throw ValidationError(reader.path_of("replicas"), "must be in [1, 100000]");
    w.replicas = static_cast<int>(replicas);
  }
  w.pod_template = template_from_node(reader.require("template"), reader.path_of("template"));
  reader.finish();
  return w;
}

DurationDist dist_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  const std::string type = reader.require_string("type");
  DurationDist dist;
  if (type == "Deterministic") {
    dist = Deterministic{detail::duration_value(reader.require("value"), reader.path_of("value"))};
  } else if (type == "Exponential") {
    dist = Exponential{detail::duration_value(reader.require("mean"), reader.path_of("mean"))};
  } else if (type == "Uniform") {
    const Duration lo = detail::duration_value(reader.require("min"), reader.path_of("min"));
    const Duration hi = detail::duration_value(reader.require("max"), reader.path_of("max"));
    dist = Uniform{lo, hi};
  } else {
    throw ValidationError(reader.path_of("type"), "unknown distribution '" + type + "'");
  }
  reader.finish();
  return dist;
}

AttackerConfig attacker_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  AttackerConfig config;
  {
    MapReader arrival(reader.require("arrival"), reader.path_of("arrival"));
    const std::string type = arrival.require_string("type");
    if (type == "AtTime") {
      config.arrival = AtTime{detail::duration_value(arrival.require("time"), arrival.path_of("time"))};
    } else if (type == "Poisson") {
      config.arrival = PoissonArrival{detail::real_value(arrival.require("ratePerSecond"), arrival.path_of("ratePerSecond"))};
    } else {
      throw ValidationError(arrival.path_of("type"), "unknown arrival type '" + type + "'");
    }
    arrival.finish();
  }
  const std::string chain_path = reader.path_of("killChain");
  const auto stages = detail::sequence(reader.require("killChain"), chain_path);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    MapReader stage(stages[i], detail::index_path(chain_path, i));
    StageSpec spec;
    spec.name = stage.require_string("name");
    spec.duration = dist_from_node(stage.require("duration"), stage.path_of("duration"));
    stage.finish();
    config.kill_chain.push_back(std::move(spec));
  }
  if (reader.has("retryDelay")) config.retry_delay = dist_from_node(reader.get("retryDelay"), reader.path_of("retryDelay"));
  if (reader.has("targetSelector")) {
    config.target_selector = detail::selector_from_node(reader.get("targetSelector"), reader.path_of("targetSelector"));
  }
  auto flag = [&](std::string_view key, bool& out) {
    if (reader.has(key)) out = detail::bool_value(reader.get(key), reader.path_of(key));
  };
  flag("requiresGpu", config.requires_gpu);
  flag("repeatAfterCompletion", config.repeat_after_completion);
  flag("remnantsSurviveRotation", config.remnants_survive_rotation);
  reader.finish();
  return config;
}

TelemetryEvent telemetry_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  TelemetryEvent event;
  event.time = kEpoch + detail::duration_value(reader.require("time"), reader.path_of("time"));
  const std::string type = reader.require_string("type");
  const auto source = telemetry_source_from_string(type);
  if (!source) throw ValidationError(reader.path_of("type"), "unknown telemetry type '" + type + "'");
  event.source_kind = *source;
  event.identifier = reader.require_string(*source == TelemetrySource::PrometheusAlert ? "name" : "constraint");
  if (reader.has("targetLabels")) {
    event.target_labels = detail::string_map(reader.get("targetLabels"), reader.path_of("targetLabels"));
  }
  reader.finish();
  return event;
}

void add_policy(ScenarioScript& script, PolicyDocument document) {
  if (auto* rotation = std::get_if<RotationPolicy>(&document)) {
    script.rotation_policies.push_back(std::move(*rotation));
  } else {
    script.mutation_policies.push_back(std::get<ContextMutationPolicy>(std::move(document)));
  }
}

void load_policies(ScenarioScript& script, const YAML::Node& node, const std::string& path,
                   const std::filesystem::path& base_dir) {
  const auto entries = detail::sequence(node, path);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string entry_path = detail::index_path(path, i);
    if (entries[i].IsMap() && entries[i]["file"]) {
      MapReader reader(entries[i], entry_path);
      const std::filesystem::path file = reader.require_string("file");
      reader.finish();
      const auto resolved = file.is_absolute() ? file : base_dir / file;
      const std::string text = read_text_file(resolved);
      try {
        for (auto& document : parse_policy_documents(text)) add_policy(script, std::move(document));
      } catch (const ValidationError& e) {
        throw ValidationError(entry_path + "(" + resolved.string() + ")." + e.field_path(), e.message());
      }
    } else {
      add_policy(script, detail::policy_from_node(entries[i], entry_path));
    }
  }
}

}  // namespace

ScenarioScript load_scenario(std::string_view doc, const std::filesystem::path& base_dir) {
  const YAML::Node root = detail::load_yaml(doc);
  MapReader reader(root, "");
  const std::string api_version = reader.require_string("apiVersion");
  if (api_version != kApiVersion) {
    throw ValidationError("apiVersion", "unsupported apiVersion '" + api_version + "'");
  }
  const std::string kind = reader.require_string("kind");
  if (kind != "Scenario") throw ValidationError("kind", "expected kind Scenario, found '" + kind + "'");
  ScenarioScript script;
  {
    MapReader metadata(reader.require("metadata"), "metadata");
    script.name = metadata.require_string("name");
    metadata.finish();
  }
  MapReader spec(reader.require("spec"), "spec");
  reader.finish();

  script.horizon = detail::duration_value(spec.require("horizon"), spec.path_of("horizon"));
  if (spec.has("seed")) script.seed = detail::unsigned_value(spec.get("seed"), spec.path_of("seed"));
  if (spec.has("replications")) {
    const auto replications = detail::integer_value(spec.get("replications"), spec.path_of("replications"));
    if (replications < 0 || replications > 1'000'000) {
      throw ValidationError(spec.path_of("replications"), "must be in [1, 1000000]");
    }
    script.replications = static_cast<int>(replications);
  }
  if (spec.has("adaEnabled")) script.ada_enabled = detail::bool_value(spec.get("adaEnabled"), spec.path_of("adaEnabled"));

  if (spec.has("cluster")) {
    MapReader cluster(spec.get("cluster"), spec.path_of("cluster"));
    if (const auto base = cluster.optional_string("ipPoolBase")) {
      const auto parsed = parse_ipv4(*base);
      if (!parsed) throw ValidationError(cluster.path_of("ipPoolBase"), "'" + *base + "' is not an IPv4 address");
      script.cluster.ip_pool_base = *parsed;
    }
    if (cluster.has("ipPoolSize")) {
      const auto size = detail::unsigned_value(cluster.get("ipPoolSize"), cluster.path_of("ipPoolSize"));
      if (size == 0 || size > (1ULL << 24)) throw ValidationError(cluster.path_of("ipPoolSize"), "must be in [1, 2^24]");
      script.cluster.ip_pool_size = static_cast<std::uint32_t>(size);
    }
    if (cluster.has("terminationGracePeriod")) {
      script.cluster.termination_grace =
          detail::duration_value(cluster.get("terminationGracePeriod"), cluster.path_of("terminationGracePeriod"));
    }
    cluster.finish();
    if (static_cast<std::uint64_t>(script.cluster.ip_pool_base) + script.cluster.ip_pool_size > (1ULL << 32)) {
      throw ValidationError("spec.cluster", "IP pool extends past 255.255.255.255");
    }
  }

  if (spec.has("controller")) {
    MapReader controller(spec.get("controller"), spec.path_of("controller"));
    if (controller.has("reconcileJitter")) {
      script.reconcile_jitter =
          detail::duration_value(controller.get("reconcileJitter"), controller.path_of("reconcileJitter"));
    }
    if (controller.has("revertMutationsOnRotation")) {
      script.revert_mutations_on_rotation = detail::bool_value(controller.get("revertMutationsOnRotation"),
                                                               controller.path_of("revertMutationsOnRotation"));
    }
    controller.finish();
  }

  {
    const std::string path = spec.path_of("workloads");
    const auto items = detail::sequence(spec.require("workloads"), path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      script.workloads.push_back(workload_from_node(items[i], detail::index_path(path, i)));
    }
  }

  if (spec.has("policies")) load_policies(script, spec.get("policies"), spec.path_of("policies"), base_dir);

  if (spec.has("telemetry")) {
    const std::string path = spec.path_of("telemetry");
    const auto items = detail::sequence(spec.get("telemetry"), path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      script.telemetry_timeline.push_back(telemetry_from_node(items[i], detail::index_path(path, i)));
    }
  }

  if (spec.has("emergencyRotations")) {
    const std::string path = spec.path_of("emergencyRotations");
    const auto items = detail::sequence(spec.get("emergencyRotations"), path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      MapReader entry(items[i], detail::index_path(path, i));
      EmergencyRotation rotation;
      rotation.time = kEpoch + detail::duration_value(entry.require("time"), entry.path_of("time"));
      rotation.workload = entry.require_string("workload");
      entry.finish();
      script.emergency_rotations.push_back(std::move(rotation));
    }
  }

  if (spec.has("attacker")) script.attacker = attacker_from_node(spec.get("attacker"), spec.path_of("attacker"));
  spec.finish();

  validate(script);
  return script;
}

bool is_scenario_document(std::string_view doc) {
  const auto documents = detail::load_all_yaml(doc);
  if (documents.size() != 1 || !documents.front().IsMap()) return false;
  const YAML::Node kind = documents.front()["kind"];
  return kind && kind.IsScalar() && kind.Scalar() == "Scenario";
}

ScenarioScript load_scenario_file(const std::filesystem::path& path) {
  return load_scenario(read_text_file(path), path.parent_path());
}

}  // namespace ada
