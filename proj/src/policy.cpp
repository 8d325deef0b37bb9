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

#include "ada/policy.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "ada/errors.hpp"
#include "yaml_support.hpp"

namespace ada {

std::string_view to_string(TelemetrySource source) {
  switch (source) {
    case TelemetrySource::PrometheusAlert:
      return "PrometheusAlert";
    case TelemetrySource::GatekeeperViolation:
      return "GatekeeperViolation";
  }
  return "unknown";
}

std::optional<TelemetrySource> telemetry_source_from_string(std::string_view text) {
  if (text == "PrometheusAlert") return TelemetrySource::PrometheusAlert;
  if (text == "GatekeeperViolation") return TelemetrySource::GatekeeperViolation;
  return std::nullopt;
}

std::string_view to_string(RotationStrategy strategy) {
  switch (strategy) {
    case RotationStrategy::RollingUpdate:
      return "RollingUpdate";
    case RotationStrategy::Recreate:
      return "Recreate";
  }
  return "unknown";
}

std::optional<RotationStrategy> rotation_strategy_from_string(std::string_view text) {
  if (text == "RollingUpdate") return RotationStrategy::RollingUpdate;
  if (text == "Recreate") return RotationStrategy::Recreate;
  return std::nullopt;
}

const std::string& container_of(const MutationSpec& mutation) {
  return std::visit([](const auto& m) -> const std::string& { return m.container_name; }, mutation);
}

std::string_view mutation_type_name(const MutationSpec& mutation) {
  struct Namer {
    std::string_view operator()(const ContainerImageUpdate&) const { return "ContainerImageUpdate"; }
    std::string_view operator()(const ResourceAdjustment&) const { return "ResourceAdjustment"; }
    std::string_view operator()(const EnvPatch&) const { return "EnvPatch"; }
  };
  return std::visit(Namer{}, mutation);
}

bool selector_matches(const LabelSelector& selector, const Labels& labels) {
  return std::all_of(selector.match_labels.begin(), selector.match_labels.end(), [&](const auto& kv) {
    const auto it = labels.find(kv.first);
    return it != labels.end() && it->second == kv.second;
  });
}

bool trigger_fires(const ContextMutationPolicy& policy, const TelemetryEvent& event) {
  return std::any_of(policy.triggers.begin(), policy.triggers.end(), [&](const TriggerSpec& t) {
    return t.source_kind == event.source_kind && t.identifier == event.identifier;
  });
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void require_non_empty(const std::string& value, const std::string& path, std::string_view what) {
  if (value.empty()) throw ValidationError(path, std::string(what) + " must not be empty");
}

void validate_string_map(const std::map<std::string, std::string>& map, const std::string& path) {
  for (const auto& [key, value] : map) {
    if (key.empty()) throw ValidationError(path, "keys must not be empty");
    if (value.empty()) throw ValidationError(detail::child_path(path, key), "value must not be empty");
  }
}

void validate_mutation(const MutationSpec& mutation, const std::string& path) {
  require_non_empty(container_of(mutation), detail::child_path(path, "containerName"), "containerName");
  if (const auto* image = std::get_if<ContainerImageUpdate>(&mutation)) {
    require_non_empty(image->new_image, detail::child_path(path, "newImage"), "newImage");
  } else if (const auto* resources = std::get_if<ResourceAdjustment>(&mutation)) {
    const std::string base = detail::child_path(path, "resources");
    if (resources->limits.empty() && resources->requests.empty()) {
      throw ValidationError(base, "ResourceAdjustment needs at least one of limits or requests");
    }
    validate_string_map(resources->limits, detail::child_path(base, "limits"));
    validate_string_map(resources->requests, detail::child_path(base, "requests"));
  } else if (const auto* env = std::get_if<EnvPatch>(&mutation)) {
    const std::string base = detail::child_path(path, "env");
    std::set<std::string_view> keys;
    for (std::size_t i = 0; i < env->env.size(); ++i) {
      const auto& [key, value] = env->env[i];
      require_non_empty(key, detail::child_path(detail::index_path(base, i), "name"), "env name");
      if (!keys.insert(key).second) {
        throw ValidationError(detail::index_path(base, i), "duplicate env key '" + key + "'");
      }
    }
  }
}

}  // namespace

void validate(const LabelSelector& selector, const std::string& path) {
  validate_string_map(selector.match_labels, path);
}

void validate(const RotationPolicy& policy) {
  require_non_empty(policy.name, "metadata.name", "name");
  validate(policy.selector, "spec.selector.matchLabels");
  if (policy.rotation_interval <= Duration::zero()) {
    throw ValidationError("spec.rotationInterval", "rotation_interval must be greater than zero");
  }
  if (policy.max_surge < 0) throw ValidationError("spec.maxSurge", "max_surge must be non-negative");
  if (policy.max_unavailable < 0) {
    throw ValidationError("spec.maxUnavailable", "max_unavailable must be non-negative");
  }
  if (policy.strategy == RotationStrategy::RollingUpdate && policy.max_surge == 0 && policy.max_unavailable == 0) {
    throw ValidationError("spec.maxSurge", "max_surge and max_unavailable cannot both be zero for RollingUpdate");
  }
}

void validate(const ContextMutationPolicy& policy) {
  require_non_empty(policy.name, "metadata.name", "name");
  validate(policy.selector, "spec.selector.matchLabels");
  const std::string triggers = "spec.triggers.telemetrySources";
  if (policy.triggers.empty()) throw ValidationError(triggers, "at least one trigger is required");
  for (std::size_t i = 0; i < policy.triggers.size(); ++i) {
    const auto& trigger = policy.triggers[i];
    const char* key = trigger.source_kind == TelemetrySource::PrometheusAlert ? "name" : "constraint";
    require_non_empty(trigger.identifier, detail::child_path(detail::index_path(triggers, i), key), key);
  }
  if (policy.mutations.empty()) throw ValidationError("spec.mutations", "at least one mutation is required");
  for (std::size_t i = 0; i < policy.mutations.size(); ++i) {
    validate_mutation(policy.mutations[i], detail::index_path("spec.mutations", i));
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

namespace {

TriggerSpec trigger_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  const std::string type = reader.require_string("type");
  const auto source = telemetry_source_from_string(type);
  if (!source) throw ValidationError(reader.path_of("type"), "unknown trigger type '" + type + "'");
  TriggerSpec trigger{*source, {}};
  trigger.identifier =
      reader.require_string(*source == TelemetrySource::PrometheusAlert ? "name" : "constraint");
  reader.finish();
  return trigger;
}

MutationSpec mutation_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  const std::string type = reader.require_string("type");
  if (type != "ContainerImageUpdate" && type != "ResourceAdjustment" && type != "EnvPatch") {
    throw ValidationError(reader.path_of("type"), "unknown mutation type '" + type + "'");
  }
  const std::string container = reader.require_string("containerName");
  MutationSpec mutation;
  if (type == "ContainerImageUpdate") {
    mutation = ContainerImageUpdate{container, reader.require_string("newImage")};
  } else if (type == "ResourceAdjustment") {
    MapReader resources(reader.require("resources"), reader.path_of("resources"));
    ResourceAdjustment adjustment{container, {}, {}};
    if (resources.has("limits")) adjustment.limits = string_map(resources.get("limits"), resources.path_of("limits"));
    if (resources.has("requests")) {
      adjustment.requests = string_map(resources.get("requests"), resources.path_of("requests"));
    }
    resources.finish();
    mutation = std::move(adjustment);
  } else if (type == "EnvPatch") {
    EnvPatch patch{container, {}};
    const std::string env_path = reader.path_of("env");
    const auto items = sequence(reader.require("env"), env_path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      MapReader entry(items[i], index_path(env_path, i));
      std::string key = entry.require_string("name");
      std::string value = entry.require_string("value");
      entry.finish();
      patch.env.emplace_back(std::move(key), std::move(value));
    }
    mutation = std::move(patch);
  }
  reader.finish();
  return mutation;
}

RotationPolicy rotation_spec(MapReader& spec, std::string name) {
  RotationPolicy policy;
  policy.name = std::move(name);
  if (spec.has("selector")) policy.selector = selector_from_node(spec.get("selector"), spec.path_of("selector"));
  policy.rotation_interval = duration_value(spec.require("rotationInterval"), spec.path_of("rotationInterval"));
  if (const auto strategy = spec.optional_string("strategy")) {
    const auto parsed = rotation_strategy_from_string(*strategy);
    if (!parsed) throw ValidationError(spec.path_of("strategy"), "unknown strategy '" + *strategy + "'");
    policy.strategy = *parsed;
  }
  auto small_count = [&](std::string_view key, int fallback) {
    if (!spec.has(key)) return fallback;
    const auto value = unsigned_value(spec.get(key), spec.path_of(key));
    if (value > 1'000'000) throw ValidationError(spec.path_of(key), "value is unreasonably large");
    return static_cast<int>(value);
  };
  policy.max_surge = small_count("maxSurge", 1);
  policy.max_unavailable = small_count("maxUnavailable", 0);
  spec.finish();
  return policy;
}

ContextMutationPolicy mutation_spec(MapReader& spec, std::string name) {
  ContextMutationPolicy policy;
  policy.name = std::move(name);
  if (spec.has("selector")) policy.selector = selector_from_node(spec.get("selector"), spec.path_of("selector"));

  MapReader triggers(spec.require("triggers"), spec.path_of("triggers"));
  const std::string sources_path = triggers.path_of("telemetrySources");
  const auto sources = sequence(triggers.require("telemetrySources"), sources_path);
  triggers.finish();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    policy.triggers.push_back(trigger_from_node(sources[i], index_path(sources_path, i)));
  }

  const std::string mutations_path = spec.path_of("mutations");
  if (!spec.has("mutations")) throw ValidationError(mutations_path, "at least one mutation is required");
  const auto mutations = sequence(spec.get("mutations"), mutations_path);
  for (std::size_t i = 0; i < mutations.size(); ++i) {
    policy.mutations.push_back(mutation_from_node(mutations[i], index_path(mutations_path, i)));
  }
  spec.finish();
  return policy;
}

}  // namespace

LabelSelector selector_from_node(const YAML::Node& node, const std::string& path) {
  MapReader reader(node, path);
  LabelSelector selector;
  if (reader.has("matchLabels")) {
    selector.match_labels = string_map(reader.get("matchLabels"), reader.path_of("matchLabels"));
  }
  reader.finish();
  return selector;
}

PolicyDocument policy_from_node(const YAML::Node& root, const std::string& path) {
  MapReader reader(root, path);
  const std::string api_version = reader.require_string("apiVersion");
  if (api_version != kApiVersion) {
    throw ValidationError(reader.path_of("apiVersion"),
                          "unsupported apiVersion '" + api_version + "' (expected " + std::string(kApiVersion) + ")");
  }
  const std::string kind = reader.require_string("kind");
  MapReader metadata(reader.require("metadata"), reader.path_of("metadata"));
  std::string name = metadata.require_string("name");
  metadata.finish();
  MapReader spec(reader.require("spec"), reader.path_of("spec"));
  reader.finish();

  PolicyDocument document;
  if (kind == "RotationPolicy") {
    document = rotation_spec(spec, std::move(name));
  } else if (kind == "ContextMutationPolicy") {
    document = mutation_spec(spec, std::move(name));
  } else {
    throw ValidationError(reader.path_of("kind"), "unknown kind '" + kind + "'");
  }
  try {
    std::visit([](const auto& policy) { validate(policy); }, document);
  } catch (const ValidationError& e) {
    if (path.empty()) throw;
    throw ValidationError(child_path(path, e.field_path()), e.message());
  }
  return document;
}

}  // namespace detail

namespace {

template <typename Policy>
Policy parse_single(std::string_view doc, std::string_view expected_kind) {
  const auto root = detail::load_yaml(doc);
  auto document = detail::policy_from_node(root, "");
  if (auto* policy = std::get_if<Policy>(&document)) return std::move(*policy);
  throw ValidationError("kind", "expected kind " + std::string(expected_kind));
}

}  // namespace

RotationPolicy parse_rotation_policy(std::string_view doc) {
  return parse_single<RotationPolicy>(doc, "RotationPolicy");
}

ContextMutationPolicy parse_mutation_policy(std::string_view doc) {
  return parse_single<ContextMutationPolicy>(doc, "ContextMutationPolicy");
}

std::vector<PolicyDocument> parse_policy_documents(std::string_view text) {
  std::vector<PolicyDocument> out;
  const auto nodes = detail::load_all_yaml(text);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.push_back(detail::policy_from_node(nodes[i], nodes.size() == 1 ? "" : "document[" + std::to_string(i) + "]"));
  }
  if (out.empty()) throw ValidationError("", "no policy documents found");
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

bool plain_safe(std::string_view s) {
  static const std::set<std::string, std::less<>> kReserved = {
      "null", "Null", "NULL", "true", "True", "TRUE", "false", "False", "FALSE",
      "yes",  "Yes",  "YES",  "no",   "No",   "NO",   "on",    "On",    "ON",
      "off",  "Off",  "OFF",  "y",    "Y",    "n",    "N"};
  if (s.empty() || !std::isalnum(static_cast<unsigned char>(s.front()))) return false;
  if (kReserved.count(s) != 0) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '/' || c == '-';
  });
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (u < 0x20 || u == 0x7f) {
      std::array<char, 5> buf{};
      std::snprintf(buf.data(), buf.size(), "\\x%02x", u);
      out += buf.data();
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

std::string text(std::string_view s) { return plain_safe(s) ? std::string(s) : quoted(s); }

class Emitter {
 public:
  Emitter& line(int indent, std::string_view content) {
    out_ << std::string(static_cast<std::size_t>(indent), ' ') << content << '\n';
    return *this;
  }
  Emitter& field(int indent, std::string_view key, std::string_view value) {
    return line(indent, std::string(key) + ": " + std::string(value));
  }
  Emitter& map(int indent, const std::map<std::string, std::string>& entries, bool quote_values) {
    for (const auto& [k, v] : entries) field(indent, text(k), quote_values ? quoted(v) : text(v));
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void header(Emitter& e, std::string_view kind, const std::string& name, const LabelSelector& selector) {
  e.field(0, "apiVersion", kApiVersion);
  e.field(0, "kind", kind);
  e.line(0, "metadata:");
  e.field(2, "name", text(name));
  e.line(0, "spec:");
  e.line(2, "selector:");
  if (selector.match_labels.empty()) {
    e.line(4, "matchLabels: {}");
  } else {
    e.line(4, "matchLabels:");
    e.map(6, selector.match_labels, false);
  }
}

}  // namespace

std::string serialize(const RotationPolicy& policy) {
  Emitter e;
  header(e, "RotationPolicy", policy.name, policy.selector);
  e.field(2, "rotationInterval", format_duration(policy.rotation_interval));
  e.field(2, "strategy", to_string(policy.strategy));
  e.field(2, "maxSurge", std::to_string(policy.max_surge));
  e.field(2, "maxUnavailable", std::to_string(policy.max_unavailable));
  return e.str();
}

std::string serialize(const ContextMutationPolicy& policy) {
  Emitter e;
  header(e, "ContextMutationPolicy", policy.name, policy.selector);
  e.line(2, "triggers:");
  e.line(4, "telemetrySources:");
  for (const auto& trigger : policy.triggers) {
    e.field(6, "- type", to_string(trigger.source_kind));
    e.field(8, trigger.source_kind == TelemetrySource::PrometheusAlert ? "name" : "constraint",
            text(trigger.identifier));
  }
  e.line(2, "mutations:");
  for (const auto& mutation : policy.mutations) {
    e.field(4, "- type", mutation_type_name(mutation));
    e.field(6, "containerName", text(container_of(mutation)));
    if (const auto* image = std::get_if<ContainerImageUpdate>(&mutation)) {
      e.field(6, "newImage", quoted(image->new_image));
    } else if (const auto* resources = std::get_if<ResourceAdjustment>(&mutation)) {
      e.line(6, "resources:");
      if (!resources->limits.empty()) {
        e.line(8, "limits:");
        e.map(10, resources->limits, true);
      }
      if (!resources->requests.empty()) {
        e.line(8, "requests:");
        e.map(10, resources->requests, true);
      }
    } else if (const auto* env = std::get_if<EnvPatch>(&mutation)) {
      if (env->env.empty()) {
        e.line(6, "env: []");
      } else {
        e.line(6, "env:");
        for (const auto& [key, value] : env->env) {
          e.field(8, "- name", text(key));
          e.field(10, "value", quoted(value));
        }
      }
    }
  }
  return e.str();
}

}  // namespace ada
