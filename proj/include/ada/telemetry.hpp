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

#include "ada/time.hpp"

namespace ada {

using Labels = std::map<std::string, std::string>;

enum class TelemetrySource { PrometheusAlert, GatekeeperViolation };

std::string_view to_string(TelemetrySource source);
std::optional<TelemetrySource> telemetry_source_from_string(std::string_view text);

// A scripted alert or admission violation. target_labels names the pods the
// event is attributed to; an empty map attributes it to every workload.
struct TelemetryEvent {
  Timestamp time{};
  TelemetrySource source_kind = TelemetrySource::PrometheusAlert;
  std::string identifier;
  Labels target_labels;

  bool operator==(const TelemetryEvent&) const = default;
};

}  // namespace ada
