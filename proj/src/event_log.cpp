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

#include "ada/event_log.hpp"

#include <array>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ada/errors.hpp"

namespace ada {

namespace {

struct KindName {
  EventKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 13> kKindNames{{
    {EventKind::PodCreated, "PodCreated"},
    {EventKind::PodReady, "PodReady"},
    {EventKind::PodTerminating, "PodTerminating"},
    {EventKind::PodTerminated, "PodTerminated"},
    {EventKind::TemplateMutated, "TemplateMutated"},
    {EventKind::RotationTriggered, "RotationTriggered"},
    {EventKind::MutationTriggered, "MutationTriggered"},
    {EventKind::TelemetryReceived, "TelemetryReceived"},
    {EventKind::CompromiseEstablished, "CompromiseEstablished"},
    {EventKind::CompromiseAttemptFailed, "CompromiseAttemptFailed"},
    {EventKind::CompromiseDisrupted, "CompromiseDisrupted"},
    {EventKind::KillChainStageCompleted, "KillChainStageCompleted"},
    {EventKind::KillChainCompleted, "KillChainCompleted"},
}};

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "Unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
  for (const auto& entry : kKindNames) {
    if (entry.name == text) return entry.kind;
  }
  return std::nullopt;
}

const std::string& ClusterEvent::get(const std::string& key) const {
  static const std::string kEmpty;
  const auto it = detail.find(key);
  return it == detail.end() ? kEmpty : it->second;
}

const ClusterEvent& EventLog::append(Timestamp time, EventKind kind, std::string subject, EventDetail detail) {
  if (!events_.empty() && time < events_.back().time) {
    throw MalformedLog("event at " + std::to_string(us_of(time)) + "us appended after " +
                       std::to_string(us_of(events_.back().time)) + "us");
  }
  events_.push_back(ClusterEvent{time, events_.size(), kind, std::move(subject), std::move(detail)});
  return events_.back();
}

std::string EventLog::to_ndjson() const {
  std::string out;
  for (const auto& event : events_) {
    nlohmann::ordered_json record;
    record["time_us"] = us_of(event.time);
    record["seq"] = event.seq;
    record["kind"] = to_string(event.kind);
    record["subject"] = event.subject;
    record["detail"] = event.detail;
    out += record.dump();
    out += '\n';
  }
  return out;
}

EventLog EventLog::from_ndjson(std::string_view text) {
  EventLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SyntaxError("event log line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const auto kind = event_kind_from_string(record.at("kind").get<std::string>());
      if (!kind) throw MalformedLog("event log line " + std::to_string(line_no) + ": unknown kind");
      const auto seq = record.at("seq").get<std::uint64_t>();
      if (seq != log.events_.size()) {
        throw MalformedLog("event log line " + std::to_string(line_no) + ": sequence number " + std::to_string(seq) +
                           " out of order");
      }
      log.append(at_us(record.at("time_us").get<std::int64_t>()), *kind, record.at("subject").get<std::string>(),
                 record.at("detail").get<EventDetail>());
    } catch (const nlohmann::json::exception& e) {
      throw MalformedLog("event log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

}  // namespace ada
