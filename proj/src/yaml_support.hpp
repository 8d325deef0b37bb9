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

// Strict readers over yaml-cpp nodes. Every accessor reports failures as
// ValidationError carrying the document path of the offending field.

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ada/policy.hpp"
#include "ada/time.hpp"

namespace ada::detail {

YAML::Node load_yaml(std::string_view text);
std::vector<YAML::Node> load_all_yaml(std::string_view text);

std::string child_path(const std::string& base, std::string_view key);
std::string index_path(const std::string& base, std::size_t index);

std::string scalar(const YAML::Node& node, const std::string& path);
std::vector<YAML::Node> sequence(const YAML::Node& node, const std::string& path);
std::map<std::string, std::string> string_map(const YAML::Node& node, const std::string& path);
Duration duration_value(const YAML::Node& node, const std::string& path);
std::int64_t integer_value(const YAML::Node& node, const std::string& path);
std::uint64_t unsigned_value(const YAML::Node& node, const std::string& path);
double real_value(const YAML::Node& node, const std::string& path);
bool bool_value(const YAML::Node& node, const std::string& path);

// Reads a mapping while tracking which keys were consumed; finish() rejects
// the rest.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string path);

  bool has(std::string_view key) const;
  // Undefined node when absent.
  YAML::Node get(std::string_view key);
  YAML::Node require(std::string_view key);
  std::string require_string(std::string_view key);
  std::optional<std::string> optional_string(std::string_view key);

  const std::string& path() const { return path_; }
  std::string path_of(std::string_view key) const { return child_path(path_, key); }

  void finish() const;

 private:
  std::optional<std::size_t> find(std::string_view key) const;

  std::vector<std::pair<std::string, YAML::Node>> entries_;
  std::vector<bool> seen_;
  std::string path_;
};

// Policy bodies, shared with the scenario loader for inline documents.
PolicyDocument policy_from_node(const YAML::Node& root, const std::string& path);
LabelSelector selector_from_node(const YAML::Node& node, const std::string& path);

}  // namespace ada::detail
