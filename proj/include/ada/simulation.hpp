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
#include <vector>

#include "ada/adversary.hpp"
#include "ada/event_log.hpp"
#include "ada/metrics.hpp"
#include "ada/scenario.hpp"

namespace ada {

struct SimulationOutcome {
  EventLog log;
  AttackerState attacker;
};

// One replication driven to the horizon with the given seed. Events at
// exactly the horizon are processed.
SimulationOutcome simulate(const ScenarioScript& script, std::uint64_t seed);

struct ReplicationResult {
  int replication = 0;
  std::uint64_t seed = 0;
  EventLog log;
  MetricsReport report;
};

ReplicationResult run_replication(const ScenarioScript& script, int replication);

// Runs every replication with seed = script.seed + r. Uses up to `threads`
// workers (0 = hardware concurrency); results are in replication order and
// independent of the thread count.
std::vector<ReplicationResult> run(const ScenarioScript& script, unsigned threads = 0);

// The same script with ada_enabled = false.
ScenarioScript baseline_of(const ScenarioScript& script);

}  // namespace ada
