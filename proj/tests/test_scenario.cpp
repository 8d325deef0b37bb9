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

#include "ada/errors.hpp"
#include "ada/scenario.hpp"
#include "support/builders.hpp"

namespace ada {
namespace {

using testing::scenario_fixture;
using testing::seconds;

const std::string kMinimal = R"(apiVersion: ADA.security.r6.dev/v1
kind: Scenario
metadata:
  name: minimal
spec:
  horizon: 600s
  seed: 3
  replications: 2
  workloads:
    - name: api
      replicas: 2
      template:
        containerName: api
        image: "registry.local/api:1.0"
        labels:
          app: api
  policies:
    - apiVersion: ADA.security.r6.dev/v1
      kind: RotationPolicy
      metadata:
        name: api-rotation
      spec:
        rotationInterval: 120s
)";

std::string with_spec_tail(const std::string& tail) { return kMinimal + tail; }

std::string field_path_of(const std::string& doc) {
  try {
    load_scenario(doc);
  } catch (const ValidationError& e) {
    return e.field_path();
  }
  return "<no error>";
}

TEST(LoadScenario, CompromisedNimFixture) {
  const auto s = load_scenario_file(scenario_fixture("compromised-nim"));
  EXPECT_EQ(s.name, "compromised-nim");
  EXPECT_EQ(s.horizon, seconds(3600));
  ASSERT_EQ(s.workloads.size(), 1u);
  EXPECT_EQ(s.workloads[0].name, "nim");
  EXPECT_EQ(s.workloads[0].pod_template.startup_delay, seconds(5));
  ASSERT_EQ(s.rotation_policies.size(), 1u);
  EXPECT_EQ(s.rotation_policies[0].rotation_interval, seconds(300));
  ASSERT_TRUE(s.attacker.has_value());
  EXPECT_EQ(s.attacker->kill_chain.size(), 4u);
  EXPECT_TRUE(s.attacker->requires_gpu);
  EXPECT_TRUE(s.ada_enabled);
  EXPECT_NO_THROW(validate(s));
}

TEST(LoadScenario, EveryFixtureLoads) {
  for (const auto& entry : std::filesystem::directory_iterator(testing::fixtures_dir() / "scenarios")) {
    SCOPED_TRACE(entry.path().string());
    const auto s = load_scenario_file(entry.path());
    EXPECT_EQ(s.name, entry.path().stem().string());
    EXPECT_NO_THROW(validate(s));
  }
}

TEST(LoadScenario, MutationFixtureResolvesPolicyFiles) {
  const auto s = load_scenario_file(scenario_fixture("nim-mutation"));
  ASSERT_EQ(s.mutation_policies.size(), 1u);
  EXPECT_EQ(s.mutation_policies[0].name, "nim-risk-based-mutation");
  ASSERT_EQ(s.telemetry_timeline.size(), 1u);
  EXPECT_EQ(s.telemetry_timeline[0].time, at_seconds(50));
  EXPECT_EQ(s.telemetry_timeline[0].target_labels, (Labels{{"app", "nim-inference"}}));
}

TEST(LoadScenario, InlineMinimalDefaults) {
  const auto s = load_scenario(kMinimal);
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(s.replications, 2);
  EXPECT_EQ(s.workloads[0].replicas, 2);
  EXPECT_EQ(s.cluster, ClusterConfig{});
  EXPECT_EQ(s.reconcile_jitter, Duration::zero());
  EXPECT_FALSE(s.revert_mutations_on_rotation);
  EXPECT_FALSE(s.attacker.has_value());
  EXPECT_TRUE(s.emergency_rotations.empty());
}

TEST(LoadScenario, ControllerConfigCarriesPolicies) {
  const auto s = load_scenario(kMinimal);
  const auto config = s.controller_config();
  ASSERT_EQ(config.rotation_policies.size(), 1u);
  EXPECT_EQ(config.rotation_policies[0].name, "api-rotation");
}

TEST(LoadScenario, UnsortedTelemetryRejected) {
  const std::string doc = with_spec_tail(R"(  telemetry:
    - time: 100s
      type: PrometheusAlert
      name: a
    - time: 50s
      type: PrometheusAlert
      name: b
)");
  EXPECT_EQ(field_path_of(doc), "spec.telemetry");
}

TEST(LoadScenario, TelemetryPastHorizonRejected) {
  const std::string doc = with_spec_tail(R"(  telemetry:
    - time: 601s
      type: GatekeeperViolation
      constraint: c
)");
  EXPECT_EQ(field_path_of(doc), "spec.telemetry[0].time");
}

TEST(LoadScenario, ZeroReplicationsRejected) {
  std::string doc = kMinimal;
  doc.replace(doc.find("replications: 2"), 15, "replications: 0");
  EXPECT_EQ(field_path_of(doc), "spec.replications");
}

TEST(LoadScenario, ZeroHorizonRejected) {
  std::string doc = kMinimal;
  doc.replace(doc.find("horizon: 600s"), 13, "horizon: 0s");
  EXPECT_EQ(field_path_of(doc), "spec.horizon");
}

TEST(LoadScenario, EmergencyRotationForUnknownWorkload) {
  const std::string doc = with_spec_tail(R"(  emergencyRotations:
    - time: 10s
      workload: ghost
)");
  EXPECT_EQ(field_path_of(doc), "spec.emergencyRotations[0].workload");
}

TEST(LoadScenario, UnknownKeysAndWrongKind) {
  EXPECT_THROW(load_scenario(with_spec_tail("  colour: blue\n")), ValidationError);
  std::string wrong = kMinimal;
  wrong.replace(wrong.find("kind: Scenario"), 14, "kind: Elephant");
  EXPECT_THROW(load_scenario(wrong), ValidationError);
  EXPECT_THROW(load_scenario("spec: [1, 2\n"), SyntaxError);
}

TEST(LoadScenario, AttackerBlock) {
  const auto s = load_scenario(with_spec_tail(R"(  attacker:
    arrival:
      type: Poisson
      ratePerSecond: 0.5
    killChain:
      - name: Foothold
        duration: {type: Uniform, min: 1s, max: 3s}
    retryDelay: {type: Exponential, mean: 10s}
    repeatAfterCompletion: true
    remnantsSurviveRotation: true
)"));
  ASSERT_TRUE(s.attacker.has_value());
  EXPECT_EQ(std::get<PoissonArrival>(s.attacker->arrival).rate_per_second, 0.5);
  EXPECT_EQ(std::get<Uniform>(s.attacker->kill_chain[0].duration), (Uniform{seconds(1), seconds(3)}));
  EXPECT_EQ(std::get<Exponential>(s.attacker->retry_delay).mean, seconds(10));
  EXPECT_TRUE(s.attacker->repeat_after_completion);
  EXPECT_TRUE(s.attacker->remnants_survive_rotation);
}

TEST(LoadScenario, BadAttackerRateRejected) {
  const std::string doc = with_spec_tail(R"(  attacker:
    arrival:
      type: Poisson
      ratePerSecond: 0
    killChain:
      - name: Foothold
        duration: {type: Deterministic, value: 1s}
)");
  EXPECT_EQ(field_path_of(doc), "spec.attacker.arrival.ratePerSecond");
}

TEST(LoadScenario, MissingPolicyFileIsIoError) {
  std::string missing = kMinimal;
  missing += "    - file: does-not-exist.yaml\n";
  EXPECT_THROW(load_scenario(missing, testing::test_data_dir()), IoError);
}

TEST(IsScenarioDocument, DistinguishesKinds) {
  EXPECT_TRUE(is_scenario_document(kMinimal));
  EXPECT_FALSE(is_scenario_document(read_text_file(testing::policy_fixture("nim-risk-based-mutation"))));
}

TEST(ReadTextFile, MissingFile) {
  EXPECT_THROW(read_text_file(testing::test_data_dir() / "nope.yaml"), IoError);
}

}  // namespace
}  // namespace ada
