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

#include <cstddef>
#include <cstdint>
#include <variant>

#include "ada/event_queue.hpp"

namespace ada {

enum class PodUid : std::uint64_t {};

// Everything the simulation can schedule. Cluster timers are consumed by
// ClusterState::fire; the rest belong to the controller, the telemetry
// script and the attacker.
namespace timer {
struct PodReady {
  PodUid pod;
};
struct PodTermination {
  PodUid pod;
};
struct ControllerWake {
  std::uint64_t generation;
};
struct Telemetry {
  std::size_t index;
};
struct EmergencyRotation {
  std::size_t index;
};
struct AttackAttempt {
  std::uint64_t generation;
};
struct StageCompletion {
  std::uint64_t binding;
};
}  // namespace timer

using TimerAction = std::variant<timer::PodReady, timer::PodTermination, timer::ControllerWake, timer::Telemetry,
                                 timer::EmergencyRotation, timer::AttackAttempt, timer::StageCompletion>;

using TimerQueue = EventQueue<TimerAction>;

}  // namespace ada
