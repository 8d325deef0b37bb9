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
#include <string>

#include "ada/errors.hpp"
#include "ada/policy.hpp"
#include "ada/scenario.hpp"
#include "support/builders.hpp"

namespace ada {
namespace {

using testing::policy_fixture;
using testing::seconds;

const std::string& risk_policy_text() {
  static const std::string text = read_text_file(policy_fixture("nim-risk-based-mutation"));
  return text;
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

std::string rotation_doc(const std::string& spec_body) {
  return "apiVersion: ADA.security.r6.dev/v1\nkind: RotationPolicy\nmetadata:\n  name: r\nspec:\n" + spec_body;
}

TEST(RotationPolicyParse, DefaultsSurgeAndUnavailable) {
  const auto p = parse_rotation_policy(rotation_doc("  rotationInterval: 300s\n  strategy: RollingUpdate\n"));
  EXPECT_EQ(p.rotation_interval, seconds(300));
  EXPECT_EQ(p.strategy, RotationStrategy::RollingUpdate);
  EXPECT_EQ(p.max_surge, 1);
  EXPECT_EQ(p.max_unavailable, 0);
  EXPECT_TRUE(p.selector.match_labels.empty());
}

TEST(RotationPolicyParse, RecreateStrategy) {
  const auto p = parse_rotation_policy(rotation_doc("  rotationInterval: 60s\n  strategy: Recreate\n"));
  EXPECT_EQ(p.strategy, RotationStrategy::Recreate);
  EXPECT_EQ(p.rotation_interval, seconds(60));
}

TEST(RotationPolicyParse, ZeroIntervalNamesField) {
  try {
    parse_rotation_policy(rotation_doc("  rotationInterval: 0s\n"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field_path(), "spec.rotationInterval");
    EXPECT_NE(std::string(e.what()).find("rotation_interval"), std::string::npos);
  }
}

TEST(RotationPolicyParse, RejectsNoProgressRollingUpdate) {
  EXPECT_THROW(parse_rotation_policy(rotation_doc("  rotationInterval: 60s\n  maxSurge: 0\n  maxUnavailable: 0\n")),
               ValidationError);
}

TEST(RotationPolicyParse, RejectsUnknownFieldsAndBadDurations) {
  EXPECT_THROW(parse_rotation_policy(rotation_doc("  rotationInterval: 60s\n  colour: blue\n")), ValidationError);
  EXPECT_THROW(parse_rotation_policy(rotation_doc("  rotationInterval: 5 minutes\n")), ValidationError);
  EXPECT_THROW(parse_rotation_policy(rotation_doc("  rotationInterval: -5s\n")), ValidationError);
  EXPECT_THROW(parse_rotation_policy(rotation_doc("  rotationInterval: 60s\n  strategy: BlueGreen\n")),
               ValidationError);
}

TEST(RotationPolicyParse, MalformedYamlIsSyntaxError) {
  EXPECT_THROW(parse_rotation_policy("apiVersion: [unterminated\n"), SyntaxError);
}

TEST(RotationPolicyParse, WrongKindOrVersion) {
  EXPECT_THROW(parse_rotation_policy(risk_policy_text()), ValidationError);
  EXPECT_THROW(parse_rotation_policy(replace_once(rotation_doc("  rotationInterval: 60s\n"), "r6.dev/v1", "r6.dev/v2")),
               ValidationError);
}

TEST(MutationPolicyParse, RiskPolicy) {
  const auto p = parse_mutation_policy(risk_policy_text());
  EXPECT_EQ(p.name, "nim-risk-based-mutation");
  EXPECT_EQ(p.selector.match_labels, (Labels{{"app", "nim-inference"}}));
  ASSERT_EQ(p.triggers.size(), 2u);
  EXPECT_EQ(p.triggers[0], (TriggerSpec{TelemetrySource::PrometheusAlert, "high_gpu_usage"}));
  EXPECT_EQ(p.triggers[1], (TriggerSpec{TelemetrySource::GatekeeperViolation, "disallowed-hostpath"}));
  ASSERT_EQ(p.mutations.size(), 3u);
  EXPECT_EQ(std::get<ContainerImageUpdate>(p.mutations[0]),
            (ContainerImageUpdate{"nim", "nvcr.io/nim/secure-nim:latest"}));
  EXPECT_EQ(std::get<ResourceAdjustment>(p.mutations[1]),
            (ResourceAdjustment{"nim", {{"nvidia.com/gpu", "0"}}, {{"cpu", "500m"}, {"memory", "256Mi"}}}));
  EXPECT_EQ(std::get<EnvPatch>(p.mutations[2]), (EnvPatch{"nim", {{"RUNTIME_MODE", "SECURE"}}}));
}

TEST(MutationPolicyParse, RiskPolicySerializesByteIdentically) {
  EXPECT_EQ(serialize(parse_mutation_policy(risk_policy_text())), risk_policy_text());
}

TEST(MutationPolicyParse, MissingMutations) {
  const auto pos = risk_policy_text().find("  mutations:");
  ASSERT_NE(pos, std::string::npos);
  try {
    parse_mutation_policy(risk_policy_text().substr(0, pos));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field_path(), "spec.mutations");
  }
}

TEST(MutationPolicyParse, UnknownMutationTypeIsNamed) {
  try {
    parse_mutation_policy(replace_once(risk_policy_text(), "type: EnvPatch", "type: FooPatch"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("FooPatch"), std::string::npos);
  }
}

TEST(MutationPolicyParse, UnknownTriggerTypeAndDuplicateEnvKeys) {
  EXPECT_THROW(parse_mutation_policy(replace_once(risk_policy_text(), "type: PrometheusAlert", "type: Nagios")),
               ValidationError);
  const std::string duplicated = replace_once(risk_policy_text(), "          value: \"SECURE\"\n",
                                              "          value: \"SECURE\"\n        - name: RUNTIME_MODE\n"
                                              "          value: \"FAST\"\n");
  EXPECT_THROW(parse_mutation_policy(duplicated), ValidationError);
}

TEST(MutationPolicyParse, EmptyResourceAdjustmentRejected) {
  const std::string text = replace_once(risk_policy_text(),
                                        "      resources:\n        limits:\n          nvidia.com/gpu: \"0\"\n"
                                        "        requests:\n          cpu: \"500m\"\n          memory: \"256Mi\"\n",
                                        "      resources: {}\n");
  EXPECT_THROW(parse_mutation_policy(text), ValidationError);
}

TEST(MutationPolicyParse, MultiDocumentStream) {
  const std::string text = rotation_doc("  rotationInterval: 300s\n") + "---\n" + risk_policy_text();
  const auto docs = parse_policy_documents(text);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<RotationPolicy>(docs[0]));
  EXPECT_TRUE(std::holds_alternative<ContextMutationPolicy>(docs[1]));
}

TEST(SelectorMatches, Examples) {
  const LabelSelector nim{{{"app", "nim-inference"}}};
  EXPECT_TRUE(selector_matches(nim, {{"app", "nim-inference"}, {"tier", "gpu"}}));
  EXPECT_TRUE(selector_matches(LabelSelector{}, {{"anything", "x"}}));
  EXPECT_TRUE(selector_matches(LabelSelector{}, {}));
  EXPECT_FALSE(selector_matches(nim, {{"app", "other"}}));
  EXPECT_FALSE(selector_matches(nim, {}));
}

TEST(TriggerFires, RiskPolicySemantics) {
  const auto p = parse_mutation_policy(risk_policy_text());
  EXPECT_TRUE(trigger_fires(p, {{}, TelemetrySource::PrometheusAlert, "high_gpu_usage", {}}));
  EXPECT_TRUE(trigger_fires(p, {{}, TelemetrySource::GatekeeperViolation, "disallowed-hostpath", {}}));
  EXPECT_FALSE(trigger_fires(p, {{}, TelemetrySource::PrometheusAlert, "low_disk", {}}));
  // Source kind matters, not just the identifier.
  EXPECT_FALSE(trigger_fires(p, {{}, TelemetrySource::GatekeeperViolation, "high_gpu_usage", {}}));
}

// Generators for the property tests below.
class PolicyGen {
 public:
  explicit PolicyGen(std::uint64_t seed) : gen_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  std::string token() {
    static const std::vector<std::string> kPool{"nim",   "api", "tier-1", "gpu.node", "a/b",  "x_y", "true",
                                                "null",  "42",  "3.5",    "yes",      "-dash", "has space",
                                                "c:d",   "#h",  "q\"uote", "~",        "on",   "v1.2.3"};
    return kPool[static_cast<std::size_t>(pick(0, static_cast<int>(kPool.size()) - 1))];
  }

  std::string name() { return "policy-" + std::to_string(pick(0, 9999)); }

  LabelSelector selector() {
    LabelSelector s;
    const int n = pick(0, 3);
    for (int i = 0; i < n; ++i) s.match_labels[token() + std::to_string(i)] = token();
    return s;
  }

  RotationPolicy rotation() {
    RotationPolicy p;
    p.name = name();
    p.selector = selector();
    static const std::vector<int> kUnits{1, 60, 3600};
    p.rotation_interval = seconds(static_cast<std::int64_t>(pick(1, 5000)) * kUnits[pick(0, 2)]);
    p.strategy = pick(0, 1) == 0 ? RotationStrategy::RollingUpdate : RotationStrategy::Recreate;
    p.max_surge = pick(0, 4);
    p.max_unavailable = pick(0, 4);
    if (p.strategy == RotationStrategy::RollingUpdate && p.max_surge == 0 && p.max_unavailable == 0) p.max_surge = 1;
    return p;
  }

  ContextMutationPolicy mutation() {
    ContextMutationPolicy p;
    p.name = name();
    p.selector = selector();
    const int triggers = pick(1, 3);
    for (int i = 0; i < triggers; ++i) {
      p.triggers.push_back({pick(0, 1) == 0 ? TelemetrySource::PrometheusAlert : TelemetrySource::GatekeeperViolation,
                            token() + "-" + std::to_string(i)});
    }
    const std::string container = token();
    const int mutations = pick(1, 4);
    for (int i = 0; i < mutations; ++i) {
      switch (pick(0, 2)) {
        case 0:
          p.mutations.push_back(ContainerImageUpdate{container, "registry/" + token() + ":" + std::to_string(i)});
          break;
        case 1: {
          ResourceAdjustment r{container, {}, {}};
          if (pick(0, 1) == 0) r.limits["nvidia.com/gpu"] = std::to_string(pick(0, 2));
          r.requests["cpu"] = std::to_string(pick(1, 900)) + "m";
          p.mutations.push_back(r);
          break;
        }
        default: {
          EnvPatch e{container, {}};
          const int n = pick(0, 3);
          for (int k = 0; k < n; ++k) e.env.emplace_back("KEY_" + std::to_string(k), token());
          p.mutations.push_back(e);
          break;
        }
      }
    }
    return p;
  }

 private:
  std::mt19937_64 gen_;
};

TEST(PolicyProperties, RotationRoundTrip) {
  PolicyGen gen(0xA11CE);
  for (int i = 0; i < 500; ++i) {
    const RotationPolicy p = gen.rotation();
    ASSERT_NO_THROW(validate(p));
    const std::string text = serialize(p);
    ASSERT_EQ(parse_rotation_policy(text), p) << text;
    EXPECT_EQ(serialize(parse_rotation_policy(text)), text);
  }
}

TEST(PolicyProperties, MutationRoundTripPreservesOrder) {
  PolicyGen gen(0xB0B);
  for (int i = 0; i < 500; ++i) {
    const ContextMutationPolicy p = gen.mutation();
    ASSERT_NO_THROW(validate(p));
    const std::string text = serialize(p);
    const auto parsed = parse_mutation_policy(text);
    ASSERT_EQ(parsed, p) << text;
    for (std::size_t k = 0; k < p.mutations.size(); ++k) {
      EXPECT_EQ(mutation_type_name(parsed.mutations[k]), mutation_type_name(p.mutations[k]));
    }
  }
}

TEST(PolicyProperties, SelectorMonotoneUnderSuperset) {
  PolicyGen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const LabelSelector s = gen.selector();
    Labels labels = s.match_labels;
    const int extra = gen.pick(0, 3);
    for (int k = 0; k < extra; ++k) labels.emplace("extra-" + std::to_string(k), gen.token());
    ASSERT_TRUE(selector_matches(s, labels));
    Labels bigger = labels;
    bigger.emplace("more", "labels");
    ASSERT_TRUE(selector_matches(s, bigger));
  }
}

TEST(PolicyProperties, AddingTriggerNeverUnfires) {
  PolicyGen gen(99);
  for (int i = 0; i < 500; ++i) {
    ContextMutationPolicy p = gen.mutation();
    const TriggerSpec& probe = p.triggers[static_cast<std::size_t>(gen.pick(0, static_cast<int>(p.triggers.size()) - 1))];
    const TelemetryEvent event{{}, probe.source_kind, probe.identifier, {}};
    ASSERT_TRUE(trigger_fires(p, event));
    p.triggers.push_back({TelemetrySource::PrometheusAlert, "unrelated-" + std::to_string(i)});
    ASSERT_TRUE(trigger_fires(p, event));
    // OR semantics: the result equals the disjunction of single-trigger policies.
    const TelemetryEvent other{{}, TelemetrySource::GatekeeperViolation, gen.token(), {}};
    bool any = false;
    for (const auto& t : p.triggers) {
      ContextMutationPolicy single = p;
      single.triggers = {t};
      any = any || trigger_fires(single, other);
    }
    ASSERT_EQ(trigger_fires(p, other), any);
  }
}

TEST(Durations, ParseAndFormat) {
  EXPECT_EQ(parse_duration("300s"), seconds(300));
  EXPECT_EQ(parse_duration("5m"), seconds(300));
  EXPECT_EQ(parse_duration("2h"), seconds(7200));
  EXPECT_EQ(parse_duration("0s"), Duration::zero());
  EXPECT_FALSE(parse_duration("").has_value());
  EXPECT_FALSE(parse_duration("s").has_value());
  EXPECT_FALSE(parse_duration("10").has_value());
  EXPECT_FALSE(parse_duration("1.5s").has_value());
  EXPECT_FALSE(parse_duration("-1s").has_value());
  EXPECT_FALSE(parse_duration("10d").has_value());
  EXPECT_FALSE(parse_duration("99999999999999999999s").has_value());
  EXPECT_EQ(format_duration(seconds(3600)), "3600s");
  EXPECT_THROW(format_duration(Duration{1500}), std::invalid_argument);
}

}  // namespace
}  // namespace ada
