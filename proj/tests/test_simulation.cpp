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

#include <gtest/gtest.h>

#include <random>

#include "ada/metrics.hpp"
#include "ada/simulation.hpp"
#include "support/builders.hpp"

namespace ada {
namespace {

using testing::chain_attacker;
using testing::deterministic_chain;
using testing::make_rotation;
using testing::make_template;
using testing::scenario_fixture;
using testing::seconds;

ScenarioScript fixture(const std::string& name, int replications) {
  auto s = load_scenario_file(scenario_fixture(name));
  s.replications = replications;
  return s;
}

TEST(Simulate, DeterministicForSeed) {
  const auto script = fixture("compromised-nim", 1);
  EXPECT_EQ(simulate(script, 17).log.to_ndjson(), simulate(script, 17).log.to_ndjson());
  EXPECT_NE(simulate(script, 17).log.to_ndjson(), simulate(script, 18).log.to_ndjson());
}

TEST(Simulate, EventsStayWithinHorizon) {
  const auto script = fixture("compromised-nim", 1);
  const auto log = simulate(script, 1).log;
  for (const auto& e : log.entries()) ASSERT_LE(e.time, kEpoch + script.horizon);
}

TEST(Simulate, BaselineNeverRotatesOrMutates) {
  for (const char* name : {"compromised-nim", "nim-mutation", "killchain-disruption"}) {
    const auto script = baseline_of(fixture(name, 1));
    EXPECT_FALSE(script.ada_enabled);
    const auto log = simulate(script, script.seed).log;
    for (const auto& e : log.entries()) {
      ASSERT_NE(e.kind, EventKind::RotationTriggered) << name;
      ASSERT_NE(e.kind, EventKind::MutationTriggered) << name;
      ASSERT_NE(e.kind, EventKind::TemplateMutated) << name;
      ASSERT_NE(e.kind, EventKind::CompromiseDisrupted) << name;
    }
  }
}

TEST(Run, ReplicationsAreIndependentOfEachOther) {
  const auto script = fixture("compromised-nim", 6);
  const auto all = run(script, 1);
  ASSERT_EQ(all.size(), 6u);
  for (int r = 0; r < 6; ++r) {
    const auto alone = run_replication(script, r);
    EXPECT_EQ(all[static_cast<std::size_t>(r)].seed, script.seed + static_cast<std::uint64_t>(r));
    EXPECT_EQ(all[static_cast<std::size_t>(r)].log, alone.log);
    EXPECT_EQ(all[static_cast<std::size_t>(r)].report, alone.report);
  }
}

TEST(Run, ThreadCountDoesNotChangeResults) {
  const auto script = fixture("nim-mutation", 12);
  const auto serial = run(script, 1);
  const auto parallel = run(script, 8);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].replication, static_cast<int>(i));
    EXPECT_EQ(serial[i].log.to_ndjson(), parallel[i].log.to_ndjson());
    EXPECT_EQ(serial[i].report, parallel[i].report);
  }
}

// Random single-workload scenarios with maxUnavailable 0: no pod outlives
// T plus the time a full rolling pass can take.
TEST(SimulationProperties, EvictionGuaranteeAndTteBounds) {
  std::mt19937_64 gen(8080);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  for (int round = 0; round < 200; ++round) {
    const Duration interval = seconds(pick(10, 900));
    const int replicas = pick(1, 5);
    const Duration startup = seconds(pick(0, 20));
    const bool recreate = pick(0, 2) == 0;
    ScenarioScript s;
    s.name = "prop";
    s.seed = gen();
    s.horizon = seconds(pick(100, 5000));
    s.workloads.push_back({"api", replicas, make_template("api", startup)});
    s.rotation_policies.push_back(make_rotation("r", interval,
                                                recreate ? RotationStrategy::Recreate : RotationStrategy::RollingUpdate,
                                                pick(1, 3), 0));
    const auto log = simulate(s, s.seed).log;
    const Duration bound = interval + replicas * startup;
    std::map<std::string, Timestamp> created;
    for (const auto& e : log.entries()) {
      if (e.kind == EventKind::PodCreated) created[e.subject] = e.time;
      if (e.kind == EventKind::PodTerminated) {
        const Duration age = e.time - created.at(e.subject);
        ASSERT_LE(age, bound) << "round " << round;
        if (e.get("reason") == "ScheduledInterval") {
          ASSERT_GE(age, interval) << "round " << round;
          if (startup == Duration::zero()) ASSERT_EQ(age, interval);
        }
        created.erase(e.subject);
      }
    }
    for (const auto& [pod, at] : created) ASSERT_LE((kEpoch + s.horizon) - at, bound) << "round " << round;
  }
}

TEST(SimulationProperties, ShorterIntervalNeverReducesDisruptions) {
  std::uint64_t previous = UINT64_MAX;
  for (const int t : {60, 120, 300, 600, 1200, 2400}) {
    auto s = testing::single_pod_script(seconds(t), seconds(3600));
    s.attacker = chain_attacker(deterministic_chain(4, seconds(100)));
    const auto outcome = simulate(s, 1);
    EXPECT_LE(outcome.attacker.disruptions, previous) << t;
    previous = outcome.attacker.disruptions;
  }
}

TEST(SimulationProperties, KillChainLongerThanIntervalNeverCompletes) {
  std::mt19937_64 gen(12);
  for (int round = 0; round < 50; ++round) {
    const int t = std::uniform_int_distribution<int>(30, 600)(gen);
    auto s = testing::single_pod_script(seconds(t), seconds(7200));
    const int stages = std::uniform_int_distribution<int>(1, 4)(gen);
    s.attacker = chain_attacker(deterministic_chain(stages, seconds(t / stages + 1)));
    const auto outcome = simulate(s, gen());
    ASSERT_EQ(outcome.attacker.completions, 0u);
    ASSERT_GT(outcome.attacker.disruptions, 0u);
  }
}

}  // namespace
}  // namespace ada
