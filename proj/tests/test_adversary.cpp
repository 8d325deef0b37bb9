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

#include <algorithm>
#include <cmath>
#include <random>

#include "ada/adversary.hpp"
#include "ada/errors.hpp"
#include "ada/simulation.hpp"
#include "support/builders.hpp"

namespace ada {
namespace {

using testing::chain_attacker;
using testing::deterministic_chain;
using testing::exponential_chain;
using testing::make_template;
using testing::nim_template;
using testing::seconds;
using testing::single_pod_script;

std::size_t count_kind(const EventLog& log, EventKind kind) {
  std::size_t n = 0;
  for (const auto& e : log.entries()) n += e.kind == kind ? 1 : 0;
  return n;
}

TEST(Sample, Distributions) {
  Rng rng(5);
  EXPECT_EQ(sample(Deterministic{seconds(7)}, rng), seconds(7));
  double total = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Duration d = sample(Exponential{seconds(60)}, rng);
    ASSERT_GE(d, Duration::zero());
    total += to_seconds(d);
  }
  EXPECT_NEAR(total / n, 60.0, 60.0 * 5.0 / std::sqrt(n));
  for (int i = 0; i < 10000; ++i) {
    const Duration d = sample(Uniform{seconds(2), seconds(4)}, rng);
    ASSERT_GE(d, seconds(2));
    ASSERT_LE(d, seconds(4));
  }
  EXPECT_DOUBLE_EQ(mean_seconds(Uniform{seconds(2), seconds(4)}), 3.0);
}

TEST(AttackerValidation, RejectsBadConfigs) {
  auto base = chain_attacker(deterministic_chain(2, seconds(10)));
  EXPECT_NO_THROW(validate(base, "spec.attacker"));

  auto empty = base;
  empty.kill_chain.clear();
  EXPECT_THROW(validate(empty, "spec.attacker"), ValidationError);

  auto zero_stage = base;
  zero_stage.kill_chain[1].duration = Deterministic{Duration::zero()};
  try {
    validate(zero_stage, "spec.attacker");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field_path(), "spec.attacker.killChain[1].duration");
  }

  auto bad_uniform = base;
  bad_uniform.kill_chain[0].duration = Uniform{seconds(5), seconds(5)};
  EXPECT_THROW(validate(bad_uniform, "spec.attacker"), ValidationError);

  auto bad_rate = base;
  bad_rate.arrival = PoissonArrival{0.0};
  EXPECT_THROW(validate(bad_rate, "spec.attacker"), ValidationError);

  auto zero_retry = base;
  zero_retry.retry_delay = Deterministic{Duration::zero()};
  EXPECT_NO_THROW(validate(zero_retry, "spec.attacker"));
}

TEST(PodEligible, PhaseSelectorAndGpu) {
  ClusterState state(1);
  state.add_workload({"nim", 1, nim_template()});
  state.add_workload({"slow", 1, make_template("slow", seconds(10))});
  const PodUid pending = state.spawn_pod("slow");
  const PodUid running = state.live_pods("nim").front();

  AttackerConfig config = chain_attacker(deterministic_chain(1, seconds(1)));
  EXPECT_TRUE(pod_eligible(config, state.pod(running)));
  EXPECT_FALSE(pod_eligible(config, state.pod(pending)));

  config.target_selector = {{{"app", "web"}}};
  EXPECT_FALSE(pod_eligible(config, state.pod(running)));

  config.target_selector = {};
  config.requires_gpu = true;
  EXPECT_TRUE(pod_eligible(config, state.pod(running)));
  PodTemplate no_gpu = nim_template();
  no_gpu.resource_limits["nvidia.com/gpu"] = "0";
  state.set_template("nim", no_gpu);
  const PodUid fresh = state.spawn_pod("nim");
  EXPECT_FALSE(pod_eligible(config, state.pod(fresh)));
}

TEST(KillChain, CompletesWithoutRotation) {
  auto script = single_pod_script(seconds(300), seconds(1000));
  script.ada_enabled = false;
  script.attacker = chain_attacker(deterministic_chain(4, seconds(100)));
  const auto outcome = simulate(script, 1);
  EXPECT_EQ(outcome.attacker.attempts, 1u);
  EXPECT_EQ(outcome.attacker.completions, 1u);
  EXPECT_EQ(outcome.attacker.disruptions, 0u);
  EXPECT_TRUE(outcome.attacker.stopped);
  ASSERT_EQ(outcome.attacker.dwell_samples.size(), 1u);
  EXPECT_EQ(outcome.attacker.dwell_samples[0], seconds(400));
  EXPECT_EQ(count_kind(outcome.log, EventKind::KillChainStageCompleted), 4u);
}

TEST(KillChain, RotationShorterThanChainDisruptsEveryTime) {
  auto script = single_pod_script(seconds(300), seconds(1000));
  script.attacker = chain_attacker(deterministic_chain(4, seconds(100)));
  const auto outcome = simulate(script, 1);
  EXPECT_EQ(outcome.attacker.completions, 0u);
  EXPECT_EQ(outcome.attacker.disruptions, 3u);
  EXPECT_EQ(count_kind(outcome.log, EventKind::RotationTriggered), 3u);
  for (const Duration d : outcome.attacker.dwell_samples) EXPECT_EQ(d, seconds(300));
  EXPECT_TRUE(outcome.attacker.conserved());
}

TEST(KillChain, RemnantsResumeAfterRotation) {
  auto script = single_pod_script(seconds(300), seconds(1000));
  script.attacker = chain_attacker(deterministic_chain(4, seconds(90)));
  script.attacker->remnants_survive_rotation = true;
  const auto outcome = simulate(script, 1);
  EXPECT_EQ(outcome.attacker.disruptions, 1u);
  EXPECT_EQ(outcome.attacker.completions, 1u);
  // Rebound at 300 on stage 3, which completes at 390.
  ASSERT_EQ(outcome.attacker.dwell_samples.size(), 2u);
  EXPECT_EQ(outcome.attacker.dwell_samples[1], seconds(90));
}

TEST(KillChain, RepeatAfterCompletion) {
  auto script = single_pod_script(seconds(300), seconds(1000));
  script.ada_enabled = false;
  script.attacker = chain_attacker(deterministic_chain(1, seconds(100)), AtTime{}, Deterministic{seconds(50)});
  script.attacker->repeat_after_completion = true;
  const auto outcome = simulate(script, 1);
  // Completions at 100, 250, 400, 550, 700, 850, 1000.
  EXPECT_EQ(outcome.attacker.completions, 7u);
  EXPECT_FALSE(outcome.attacker.stopped);
}

TEST(KillChain, GpuRequirementStarvesAfterMutation) {
  auto script = single_pod_script(seconds(300), seconds(600));
  PodTemplate no_gpu = nim_template();
  no_gpu.resource_limits["nvidia.com/gpu"] = "0";
  script.workloads[0] = {"nim", 1, no_gpu};
  script.attacker = chain_attacker(deterministic_chain(1, seconds(10)), AtTime{seconds(5)}, Deterministic{seconds(60)});
  script.attacker->requires_gpu = true;
  const auto outcome = simulate(script, 1);
  EXPECT_EQ(outcome.attacker.completions, 0u);
  EXPECT_EQ(outcome.attacker.attempts, outcome.attacker.starved);
  // Attempts at 5, 65, ..., 545.
  EXPECT_EQ(outcome.attacker.starved, 10u);
  EXPECT_EQ(count_kind(outcome.log, EventKind::CompromiseAttemptFailed), 10u);
}

TEST(KillChain, ParkedAttackerWakesOnReadiness) {
  auto script = single_pod_script(seconds(100), seconds(250), RotationStrategy::Recreate, seconds(5));
  script.attacker = chain_attacker(deterministic_chain(1, seconds(1000)), AtTime{seconds(100)});
  const auto outcome = simulate(script, 1);
  // Recreate at 100 leaves no Running pod; the zero-delay retry parks until
  // the replacement is Ready at 105.
  std::vector<Timestamp> established;
  for (const auto& e : outcome.log.entries()) {
    if (e.kind == EventKind::CompromiseEstablished) established.push_back(e.time);
  }
  EXPECT_NE(std::find(established.begin(), established.end(), at_seconds(105)), established.end());
  EXPECT_TRUE(outcome.attacker.conserved());
}

TEST(KillChain, StaleStageTimersAreIgnored) {
  auto script = single_pod_script(seconds(150), seconds(950));
  script.attacker = chain_attacker(deterministic_chain(2, seconds(100)));
  const auto outcome = simulate(script, 1);
  // Each binding finishes stage 0 at +100 and is rotated away at +150.
  EXPECT_EQ(outcome.attacker.completions, 0u);
  EXPECT_EQ(outcome.attacker.disruptions, 6u);
  EXPECT_EQ(count_kind(outcome.log, EventKind::KillChainStageCompleted), 6u);
}

// Random attacker and rotation settings; the attempt ledger must balance
// and agree with the log.
TEST(AdversaryProperties, ConservationAndLogAgreement) {
  std::mt19937_64 gen(4242);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  for (int round = 0; round < 300; ++round) {
    auto script = single_pod_script(seconds(pick(10, 600)), seconds(pick(100, 4000)),
                                    pick(0, 1) == 0 ? RotationStrategy::RollingUpdate : RotationStrategy::Recreate,
                                    seconds(pick(0, 20)));
    script.workloads[0].replicas = pick(1, 3);
    script.ada_enabled = pick(0, 4) != 0;
    const int stages = pick(1, 4);
    script.attacker = chain_attacker(pick(0, 1) == 0 ? exponential_chain(stages, seconds(pick(1, 200)))
                                                     : deterministic_chain(stages, seconds(pick(1, 200))),
                                     pick(0, 1) == 0 ? Arrival{AtTime{seconds(pick(0, 100))}}
                                                     : Arrival{PoissonArrival{pick(1, 100) / 1000.0}},
                                     Exponential{seconds(pick(1, 120))});
    script.attacker->repeat_after_completion = pick(0, 1) == 1;
    script.attacker->remnants_survive_rotation = pick(0, 3) == 0;
    const auto outcome = simulate(script, gen());
    const auto& a = outcome.attacker;
    ASSERT_TRUE(a.conserved()) << "round " << round;
    ASSERT_EQ(count_kind(outcome.log, EventKind::CompromiseEstablished) +
                  count_kind(outcome.log, EventKind::CompromiseAttemptFailed),
              a.attempts);
    ASSERT_EQ(count_kind(outcome.log, EventKind::CompromiseDisrupted), a.disruptions);
    ASSERT_EQ(count_kind(outcome.log, EventKind::KillChainCompleted), a.completions);
    ASSERT_EQ(a.dwell_samples.size(), a.disruptions + a.completions);
    if (!script.attacker->repeat_after_completion) ASSERT_LE(a.completions, 1u);
    // At most one binding at a time: establishments and endings alternate.
    int open = 0;
    for (const auto& e : outcome.log.entries()) {
      if (e.kind == EventKind::CompromiseEstablished) ASSERT_EQ(++open, 1);
      if (e.kind == EventKind::CompromiseDisrupted || e.kind == EventKind::KillChainCompleted) ASSERT_EQ(--open, 0);
    }
  }
}

}  // namespace
}  // namespace ada
