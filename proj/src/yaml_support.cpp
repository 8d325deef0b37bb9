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

#include "yaml_support.hpp"

#include <charconv>
#include <system_error>

#include "ada/errors.hpp"

namespace ada::detail {

namespace {

SyntaxError syntax_error(const YAML::Exception& e) {
  if (e.mark.is_null()) return SyntaxError("malformed document: " + e.msg);
  return SyntaxError("malformed document at line " + std::to_string(e.mark.line + 1) + ", column " +
                     std::to_string(e.mark.column + 1) + ": " + e.msg);
}

const char* type_name(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
      return "null";
    case YAML::NodeType::Scalar:
      return "scalar";
    case YAML::NodeType::Sequence:
      return "list";
    case YAML::NodeType::Map:
      return "mapping";
    default:
      return "nothing";
  }
}

}  // namespace

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw syntax_error(e);
  }
}

std::vector<YAML::Node> load_all_yaml(std::string_view text) {
  try {
    return YAML::LoadAll(std::string(text));
  } catch (const YAML::Exception& e) {
    throw syntax_error(e);
  }
}

std::string child_path(const std::string& base, std::string_view key) {
  if (base.empty()) return std::string(key);
  return base + "." + std::string(key);
}

std::string index_path(const std::string& base, std::size_t index) {
  return base + "[" + std::to_string(index) + "]";
}

std::string scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsDefined() || !node.IsScalar()) {
    throw ValidationError(path, std::string("expected a string value, found ") + type_name(node));
  }
  return node.Scalar();
}

std::vector<YAML::Node> sequence(const YAML::Node& node, const std::string& path) {
  if (!node.IsDefined() || !node.IsSequence()) {
    throw ValidationError(path, std::string("expected a list, found ") + type_name(node));
  }
  std::vector<YAML::Node> items;
  items.reserve(node.size());
  for (const auto& item : node) items.push_back(item);
  return items;
}

std::map<std::string, std::string> string_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsDefined() || !node.IsMap()) {
    throw ValidationError(path, std::string("expected a mapping, found ") + type_name(node));
  }
  std::map<std::string, std::string> out;
  for (const auto& entry : node) {
    const std::string key = scalar(entry.first, path);
    const std::string value = scalar(entry.second, child_path(path, key));
    if (!out.emplace(key, value).second) throw ValidationError(child_path(path, key), "duplicate key");
  }
  return out;
}

Duration duration_value(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  const auto parsed = parse_duration(text);
  if (!parsed) {
    throw ValidationError(path, "'" + text + "' is not a duration (expected <integer><s|m|h>)");
  }
  return *parsed;
}

std::int64_t integer_value(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ValidationError(path, "'" + text + "' is not an integer");
  }
  return value;
}

std::uint64_t unsigned_value(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ValidationError(path, "'" + text + "' is not a non-negative integer");
  }
  return value;
}

double real_value(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ValidationError(path, "'" + text + "' is not a number");
  }
  return value;
}

bool bool_value(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  if (text == "true") return true;
  if (text == "false") return false;
  throw ValidationError(path, "'" + text + "' is not a boolean (expected true or false)");
}

MapReader::MapReader(const YAML::Node& node, std::string path) : path_(std::move(path)) {
  if (!node.IsDefined() || !node.IsMap()) {
    throw ValidationError(path_, std::string("expected a mapping, found ") + type_name(node));
  }
  for (const auto& entry : node) {
    std::string key = scalar(entry.first, path_);
    if (find(key)) throw ValidationError(child_path(path_, key), "duplicate key");
    entries_.emplace_back(std::move(key), entry.second);
  }
  seen_.assign(entries_.size(), false);
}

std::optional<std::size_t> MapReader::find(std::string_view key) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first == key) return i;
  }
  return std::nullopt;
}

bool MapReader::has(std::string_view key) const { return find(key).has_value(); }

YAML::Node MapReader::get(std::string_view key) {
  const auto index = find(key);
  if (!index) return YAML::Node(YAML::NodeType::Undefined);
  seen_[*index] = true;
  return entries_[*index].second;
}

YAML::Node MapReader::require(std::string_view key) {
  const auto index = find(key);
  if (!index) throw ValidationError(path_of(key), "required field is missing");
  seen_[*index] = true;
  return entries_[*index].second;
}

std::string MapReader::require_string(std::string_view key) { return scalar(require(key), path_of(key)); }

std::optional<std::string> MapReader::optional_string(std::string_view key) {
  if (!has(key)) return std::nullopt;
  return require_string(key);
}

void MapReader::finish() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!seen_[i]) throw ValidationError(child_path(path_, entries_[i].first), "unknown field");
  }
}

}  // namespace ada::detail
