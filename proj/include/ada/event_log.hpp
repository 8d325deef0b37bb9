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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ada/time.hpp"

namespace ada {

enum class EventKind {
  PodCreated,
  PodReady,
  PodTerminating,
  PodTerminated,
  TemplateMutated,
  RotationTriggered,
  MutationTriggered,
  TelemetryReceived,
  CompromiseEstablished,
  CompromiseAttemptFailed,
  CompromiseDisrupted,
  KillChainStageCompleted,
  KillChainCompleted,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

using EventDetail = std::map<std::string, std::string>;

struct ClusterEvent {
  Timestamp time{};
  std::uint64_t seq = 0;
  EventKind kind = EventKind::PodCreated;
  // Pod uid (decimal) or workload name, depending on kind.
  std::string subject;
  EventDetail detail;

  bool operator==(const ClusterEvent&) const = default;

  // Empty string when the key is absent.
  const std::string& get(const std::string& key) const;
};

// Append-only audit trail; the single input of metric computation.
// Sequence numbers are assigned on append and times never decrease.
class EventLog {
 public:
  const ClusterEvent& append(Timestamp time, EventKind kind, std::string subject, EventDetail detail = {});

  std::span<const ClusterEvent> entries() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const ClusterEvent& operator[](std::size_t i) const { return events_[i]; }

  // One JSON object per line: {"time_us","seq","kind","subject","detail"}.
  std::string to_ndjson() const;
  // Throws SyntaxError for unparsable lines and MalformedLog for records
  // that break ordering.
  static EventLog from_ndjson(std::string_view text);

  bool operator==(const EventLog&) const = default;

 private:
  std::vector<ClusterEvent> events_;
};

}  // namespace ada
