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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ada/event_log.hpp"
#include "ada/policy.hpp"
#include "ada/rng.hpp"
#include "ada/time.hpp"
#include "ada/timers.hpp"

namespace ada {

enum class Ipv4Address : std::uint32_t {};

std::string to_string(PodUid uid);
std::string to_string(Ipv4Address address);
std::optional<Ipv4Address> parse_ipv4(std::string_view text);

// Single-container pod specification.
struct PodTemplate {
  std::string container_name;
  std::string image;
  ResourceList resource_limits;
  ResourceList resource_requests;
  EnvList env;
  Labels labels;
  Duration startup_delay{0};

  bool operator==(const PodTemplate&) const = default;
};

// Stable 16-hex-digit digest of every template field.
std::string template_hash(const PodTemplate& pod_template);
void validate(const PodTemplate& pod_template, const std::string& path);

enum class PodPhase { Pending, Running, Terminating, Terminated };
std::string_view to_string(PodPhase phase);

struct PodInstance {
  PodUid uid{};
  std::string name;
  std::string workload;
  Ipv4Address ip{};
  PodTemplate pod_template;
  PodPhase phase = PodPhase::Pending;
  Timestamp created_at{};
  std::optional<Timestamp> ready_at;
  std::optional<Timestamp> terminating_at;  // stops serving here
  std::optional<Timestamp> terminated_at;
};

struct WorkloadSpec {
  std::string name;
  int replicas = 1;
  PodTemplate pod_template;

  bool operator==(const WorkloadSpec&) const = default;
};

void validate(const WorkloadSpec& workload, const std::string& path);

struct ClusterConfig {
  Ipv4Address ip_pool_base{0x0A2A0000};  // 10.42.0.0
  std::uint32_t ip_pool_size = 65536;    // a /16
  Duration termination_grace{0};

  bool operator==(const ClusterConfig&) const = default;
};

using ReplacementPairs = std::vector<std::pair<PodUid, PodUid>>;

// One replacement pass over a workload. Pairs are (old, new) by position:
// the i-th oldest old pod with the i-th pod created.
struct Rollout {
  std::string workload;
  PodTemplate new_template;
  RotationPolicy policy;
  std::string reason;
  std::vector<PodUid> old_pods;  // oldest first
  std::size_t next_old = 0;
  std::vector<PodUid> new_pods;
  bool finished = false;
  bool superseded = false;

  ReplacementPairs pairs() const;
};

// Uniform random assignment over the free addresses of a contiguous pool.
class IpPool {
 public:
  IpPool(Ipv4Address base, std::uint32_t size);

  Ipv4Address allocate(Rng& rng);
  void release(Ipv4Address address);
  std::size_t in_use() const { return in_use_.size(); }
  std::uint32_t capacity() const { return size_; }

 private:
  std::uint32_t base_;
  std::uint32_t size_;
  std::set<std::uint32_t> in_use_;  // offsets
};

// The simulated orchestrator. Single-threaded; all mutation goes through
// member functions that append to the event log.
class ClusterState {
 public:
  struct Workload {
    WorkloadSpec spec;
    PodTemplate original_template;
    std::optional<std::size_t> active_rollout;
  };

  explicit ClusterState(std::uint64_t seed, ClusterConfig config = {});

  Timestamp clock() const { return clock_; }
  // Moves the clock forward; moving backwards throws std::logic_error.
  void advance_clock(Timestamp to);

  Rng& rng() { return rng_; }
  TimerQueue& timers() { return timers_; }
  EventLog& log() { return log_; }
  const EventLog& event_log() const { return log_; }
  const ClusterConfig& config() const { return config_; }

  // Registers a workload and places its initial replicas. Initial pods are
  // already Ready at the current clock: the deployment predates the run.
  void add_workload(const WorkloadSpec& spec);
  const std::map<std::string, Workload, std::less<>>& workloads() const { return workloads_; }
  const Workload& workload(std::string_view name) const;
  void set_template(std::string_view workload, PodTemplate pod_template);

  PodUid spawn_pod(std::string_view workload);
  PodUid spawn_pod(std::string_view workload, const PodTemplate& pod_template, std::string_view reason);
  void terminate_pod(PodUid uid, std::string_view reason = "manual");

  // Replaces every live pod of the workload with pods built from
  // new_template, oldest first, honouring the surge/unavailability budget
  // of RollingUpdate or the terminate-all-first order of Recreate. Steps
  // that wait on readiness or grace periods continue from fire(); the
  // returned pairs are those formed by the time this call returns.
  ReplacementPairs rolling_replace(std::string_view workload, const PodTemplate& new_template,
                                   const RotationPolicy& policy, std::string_view reason = "rotation");

  // Pods that were Ready and not yet Terminating at the given instant.
  int ready_replica_count(std::string_view workload, Timestamp at) const;

  const PodInstance& pod(PodUid uid) const;
  const std::map<PodUid, PodInstance>& pods() const { return pods_; }
  // Pods not yet Terminated, oldest first.
  std::vector<PodUid> live_pods(std::string_view workload) const;
  bool rollout_active(std::string_view workload) const;
  const std::vector<Rollout>& rollouts() const { return rollouts_; }

  // Applies a cluster timer. Returns false for actions owned by other
  // modules, which are left untouched.
  bool fire(const TimerAction& action);

 private:
  Workload& mutable_workload(std::string_view name);
  PodUid spawn(Workload& workload, const PodTemplate& pod_template, std::string_view reason, bool prewarmed);
  void mark_ready(PodInstance& pod);
  void finish_termination(PodInstance& pod);
  void step_rollout(std::string_view workload);
  bool step_once(Rollout& rollout, Workload& workload);
  std::string random_suffix();

  ClusterConfig config_;
  Timestamp clock_{};
  Rng rng_;
  IpPool ip_pool_;
  TimerQueue timers_;
  EventLog log_;
  std::map<std::string, Workload, std::less<>> workloads_;
  std::map<PodUid, PodInstance> pods_;
  std::map<PodUid, std::string> termination_reason_;
  std::vector<Rollout> rollouts_;
  std::uint64_t next_uid_ = 1;
  bool stepping_ = false;
};

}  // namespace ada
