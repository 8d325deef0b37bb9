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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ada {

// Simulated time. Microsecond resolution, epoch at the start of a run.
struct SimClock {
  using rep = std::int64_t;
  using period = std::micro;
  using duration = std::chrono::duration<rep, period>;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using Timestamp = SimClock::time_point;

inline constexpr Timestamp kEpoch{};

constexpr Timestamp at_us(std::int64_t us) { return Timestamp{Duration{us}}; }
constexpr Timestamp at_seconds(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }
constexpr std::int64_t us_of(Duration d) { return d.count(); }
constexpr std::int64_t us_of(Timestamp t) { return t.time_since_epoch().count(); }

inline double to_seconds(Duration d) { return static_cast<double>(d.count()) / 1e6; }

/// Parses "<integer><unit>" with unit one of s, m, h (e.g. "300s", "5m").
/// Returns nullopt for anything else, including negative values and
/// values that overflow microsecond storage.
std::optional<Duration> parse_duration(std::string_view text);

/// Inverse of parse_duration for whole-second durations ("3600s").
/// Throws std::invalid_argument for sub-second values.
std::string format_duration(Duration d);

}  // namespace ada
