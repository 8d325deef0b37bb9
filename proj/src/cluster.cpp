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

#include "ada/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "ada/errors.hpp"

namespace ada {

std::string to_string(PodUid uid) { return std::to_string(static_cast<std::uint64_t>(uid)); }

std::string to_string(Ipv4Address address) {
  const auto v = static_cast<std::uint32_t>(address);
  return std::to_string(v >> 24) + "." + std::to_string((v >> 16) & 0xff) + "." + std::to_string((v >> 8) & 0xff) +
         "." + std::to_string(v & 0xff);
}

std::optional<Ipv4Address> parse_ipv4(std::string_view text) {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (p == end || *p != '.') return std::nullopt;
      ++p;
    }
    unsigned part = 0;
    const auto [next, ec] = std::from_chars(p, end, part);
    if (ec != std::errc{} || next == p || part > 255) return std::nullopt;
    value = (value << 8) | part;
    p = next;
  }
  if (p != end) return std::nullopt;
  return Ipv4Address{value};
}

std::string_view to_string(PodPhase phase) {
  switch (phase) {
    case PodPhase::Pending:
      return "Pending";
    case PodPhase::Running:
      return "Running";
    case PodPhase::Terminating:
      return "Terminating";
    case PodPhase::Terminated:
      return "Terminated";
  }
  return "Unknown";
}

std::string template_hash(const PodTemplate& t) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (const char c : s) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xff;
    hash *= 0x100000001b3ULL;
  };
  auto feed_map = [&](std::string_view tag, const std::map<std::string, std::string>& m) {
    feed(tag);
    for (const auto& [k, v] : m) {
      feed(k);
      feed(v);
    }
  };
  feed(t.container_name);
  feed(t.image);
  feed_map("limits", t.resource_limits);
  feed_map("requests", t.resource_requests);
  feed("env");
  for (const auto& [k, v] : t.env) {
    feed(k);
    feed(v);
  }
  feed_map("labels", t.labels);
  feed(std::to_string(t.startup_delay.count()));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void validate(const PodTemplate& t, const std::string& path) {
  if (t.container_name.empty()) throw ValidationError(path + ".containerName", "must not be empty");
  if (t.image.empty()) throw ValidationError(path + ".image", "must not be empty");
  if (t.startup_delay < Duration::zero()) throw ValidationError(path + ".startupDelay", "must be non-negative");
  validate(LabelSelector{t.labels}, path + ".labels");
}

void validate(const WorkloadSpec& workload, const std::string& path) {
  if (workload.name.empty()) throw ValidationError(path + ".name", "must not be empty");
  if (workload.replicas < 1) throw ValidationError(path + ".replicas", "replicas must be at least 1");
  validate(workload.pod_template, path + ".template");
}

ReplacementPairs Rollout::pairs() const {
  ReplacementPairs out;
  const std::size_t n = std::min(old_pods.size(), new_pods.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(old_pods[i], new_pods[i]);
  return out;
}

// ---------------------------------------------------------------------------

IpPool::IpPool(Ipv4Address base, std::uint32_t size) : base_(static_cast<std::uint32_t>(base)), size_(size) {
  if (size == 0) throw std::invalid_argument("IP pool must not be empty");
  if (static_cast<std::uint64_t>(base_) + size > (1ULL << 32)) {
    throw std::invalid_argument("IP pool extends past 255.255.255.255");
  }
}

Ipv4Address IpPool::allocate(Rng& rng) {
  if (in_use_.size() >= size_) {
    throw IpPoolExhausted("IP pool of " + std::to_string(size_) + " addresses is exhausted");
  }
  std::uint32_t offset = 0;
  if (in_use_.size() * 2 <= size_) {
    // Sparse pool: rejection keeps the draw uniform over free addresses.
    do {
      offset = static_cast<std::uint32_t>(rng.uniform_index(size_));
    } while (in_use_.count(offset) != 0);
  } else {
    auto pick = rng.uniform_index(size_ - in_use_.size());
    for (offset = 0;; ++offset) {
      if (in_use_.count(offset) != 0) continue;
      if (pick-- == 0) break;
    }
  }
  in_use_.insert(offset);
  return Ipv4Address{base_ + offset};
}

void IpPool::release(Ipv4Address address) { in_use_.erase(static_cast<std::uint32_t>(address) - base_); }

// ---------------------------------------------------------------------------

ClusterState::ClusterState(std::uint64_t seed, ClusterConfig config)
    : config_(config), rng_(seed), ip_pool_(config.ip_pool_base, config.ip_pool_size) {
  if (config_.termination_grace < Duration::zero()) {
    throw std::invalid_argument("termination grace period must be non-negative");
  }
}

void ClusterState::advance_clock(Timestamp to) {
  if (to < clock_) throw std::logic_error("simulation clock cannot move backwards");
  clock_ = to;
}

void ClusterState::add_workload(const WorkloadSpec& spec) {
  validate(spec, "workload");
  if (workloads_.count(spec.name) != 0) throw std::invalid_argument("duplicate workload '" + spec.name + "'");
  auto& workload = workloads_.emplace(spec.name, Workload{spec, spec.pod_template, std::nullopt}).first->second;
  for (int i = 0; i < spec.replicas; ++i) spawn(workload, spec.pod_template, "initial", true);
}

const ClusterState::Workload& ClusterState::workload(std::string_view name) const {
  const auto it = workloads_.find(name);
  if (it == workloads_.end()) throw UnknownWorkload(std::string(name));
  return it->second;
}

ClusterState::Workload& ClusterState::mutable_workload(std::string_view name) {
  const auto it = workloads_.find(name);
  if (it == workloads_.end()) throw UnknownWorkload(std::string(name));
  return it->second;
}

void ClusterState::set_template(std::string_view workload, PodTemplate pod_template) {
  mutable_workload(workload).spec.pod_template = std::move(pod_template);
}

const PodInstance& ClusterState::pod(PodUid uid) const {
  const auto it = pods_.find(uid);
  if (it == pods_.end()) throw UnknownPod("unknown pod " + to_string(uid));
  return it->second;
}

std::string ClusterState::random_suffix() {
  // Orchestrator-style suffix alphabet: no vowels, no ambiguous digits.
  static constexpr std::string_view kAlphabet = "bcdfghjklmnpqrstvwxz2456789";
  std::string suffix(5, ' ');
  for (auto& c : suffix) c = kAlphabet[rng_.uniform_index(kAlphabet.size())];
  return suffix;
}

PodUid ClusterState::spawn_pod(std::string_view workload) {
  auto& w = mutable_workload(workload);
  return spawn(w, w.spec.pod_template, "manual", false);
}

PodUid ClusterState::spawn_pod(std::string_view workload, const PodTemplate& pod_template, std::string_view reason) {
  return spawn(mutable_workload(workload), pod_template, reason, false);
}

PodUid ClusterState::spawn(Workload& workload, const PodTemplate& pod_template, std::string_view reason,
                           bool prewarmed) {
  std::string name = workload.spec.name + "-" + random_suffix();
  const Ipv4Address ip = ip_pool_.allocate(rng_);
  const PodUid uid{next_uid_++};
  auto& pod = pods_.emplace(uid, PodInstance{uid, std::move(name), workload.spec.name, ip, pod_template,
                                             PodPhase::Pending, clock_, std::nullopt, std::nullopt, std::nullopt})
                  .first->second;
  log_.append(clock_, EventKind::PodCreated, to_string(uid),
              {{"workload", pod.workload},
               {"name", pod.name},
               {"ip", to_string(ip)},
               {"image", pod_template.image},
               {"template_hash", template_hash(pod_template)},
               {"reason", std::string(reason)}});
  if (prewarmed || pod_template.startup_delay == Duration::zero()) {
    mark_ready(pod);
  } else {
    timers_.push(clock_ + pod_template.startup_delay, timer::PodReady{uid});
  }
  return uid;
}

void ClusterState::mark_ready(PodInstance& pod) {
  if (pod.phase != PodPhase::Pending) return;
  pod.phase = PodPhase::Running;
  pod.ready_at = clock_;
  log_.append(clock_, EventKind::PodReady, to_string(pod.uid), {{"workload", pod.workload}});
}

void ClusterState::terminate_pod(PodUid uid, std::string_view reason) {
  const auto it = pods_.find(uid);
  if (it == pods_.end()) throw UnknownPod("unknown pod " + to_string(uid));
  PodInstance& pod = it->second;
  if (pod.phase == PodPhase::Terminated) throw UnknownPod("pod " + to_string(uid) + " is already terminated");
  if (pod.phase == PodPhase::Terminating) throw UnknownPod("pod " + to_string(uid) + " is already terminating");
  pod.phase = PodPhase::Terminating;
  pod.terminating_at = clock_;
  termination_reason_[uid] = std::string(reason);
  log_.append(clock_, EventKind::PodTerminating, to_string(uid),
              {{"workload", pod.workload}, {"reason", std::string(reason)}});
  if (config_.termination_grace == Duration::zero()) {
    finish_termination(pod);
  } else {
    timers_.push(clock_ + config_.termination_grace, timer::PodTermination{uid});
  }
}

void ClusterState::finish_termination(PodInstance& pod) {
  pod.phase = PodPhase::Terminated;
  pod.terminated_at = clock_;
  const auto reason = termination_reason_.extract(pod.uid);
  log_.append(clock_, EventKind::PodTerminated, to_string(pod.uid),
              {{"workload", pod.workload},
               {"reason", reason ? reason.mapped() : std::string("manual")},
               {"created_us", std::to_string(us_of(pod.created_at))}});
  ip_pool_.release(pod.ip);
  step_rollout(pod.workload);
}

bool ClusterState::fire(const TimerAction& action) {
  if (const auto* ready = std::get_if<timer::PodReady>(&action)) {
    const auto it = pods_.find(ready->pod);
    if (it != pods_.end() && it->second.phase == PodPhase::Pending) {
      mark_ready(it->second);
      step_rollout(it->second.workload);
    }
    return true;
  }
  if (const auto* termination = std::get_if<timer::PodTermination>(&action)) {
    const auto it = pods_.find(termination->pod);
    if (it != pods_.end() && it->second.phase == PodPhase::Terminating) finish_termination(it->second);
    return true;
  }
  return false;
}

std::vector<PodUid> ClusterState::live_pods(std::string_view workload) const {
  // uids grow with creation time, so map order is oldest first.
  std::vector<PodUid> out;
  for (const auto& [uid, pod] : pods_) {
    if (pod.workload == workload && pod.phase != PodPhase::Terminated) out.push_back(uid);
  }
  return out;
}

bool ClusterState::rollout_active(std::string_view workload) const {
  return this->workload(workload).active_rollout.has_value();
}

int ClusterState::ready_replica_count(std::string_view workload, Timestamp at) const {
  (void)this->workload(workload);
  int count = 0;
  for (const auto& [uid, pod] : pods_) {
    if (pod.workload != workload || !pod.ready_at || *pod.ready_at > at) continue;
    if (pod.terminating_at && *pod.terminating_at <= at) continue;
    ++count;
  }
  return count;
}

ReplacementPairs ClusterState::rolling_replace(std::string_view workload, const PodTemplate& new_template,
                                               const RotationPolicy& policy, std::string_view reason) {
  auto& w = mutable_workload(workload);
  if (w.active_rollout) {
    auto& previous = rollouts_[*w.active_rollout];
    previous.superseded = true;
    previous.finished = true;
    w.active_rollout.reset();
  }
  w.spec.pod_template = new_template;

  Rollout rollout{w.spec.name, new_template, policy, std::string(reason), {}, 0, {}, false, false};
  for (const PodUid uid : live_pods(workload)) {
    if (pods_.at(uid).phase != PodPhase::Terminating) rollout.old_pods.push_back(uid);
  }
  rollouts_.push_back(std::move(rollout));
  const std::size_t index = rollouts_.size() - 1;
  w.active_rollout = index;
  step_rollout(workload);
  return rollouts_[index].pairs();
}

void ClusterState::step_rollout(std::string_view workload) {
  if (stepping_) return;
  auto& w = mutable_workload(workload);
  if (!w.active_rollout) return;
  struct Guard {
    bool& flag;
    explicit Guard(bool& f) : flag(f) { flag = true; }
    ~Guard() { flag = false; }
  } guard(stepping_);
  Rollout& rollout = rollouts_[*w.active_rollout];
  while (step_once(rollout, w)) {
  }
  if (rollout.finished) w.active_rollout.reset();
}

bool ClusterState::step_once(Rollout& rollout, Workload& workload) {
  const auto replicas = static_cast<std::size_t>(workload.spec.replicas);
  const auto live = live_pods(workload.spec.name);

  if (rollout.policy.strategy == RotationStrategy::Recreate) {
    if (rollout.next_old < rollout.old_pods.size()) {
      while (rollout.next_old < rollout.old_pods.size()) {
        const PodUid uid = rollout.old_pods[rollout.next_old++];
        const auto phase = pods_.at(uid).phase;
        if (phase == PodPhase::Pending || phase == PodPhase::Running) terminate_pod(uid, rollout.reason);
      }
      return true;
    }
    const bool old_gone = std::all_of(rollout.old_pods.begin(), rollout.old_pods.end(),
                                      [&](PodUid uid) { return pods_.at(uid).phase == PodPhase::Terminated; });
    if (!old_gone) return false;
    if (rollout.new_pods.size() < replicas) {
      rollout.new_pods.push_back(spawn(workload, rollout.new_template, rollout.reason, false));
      return true;
    }
    rollout.finished = true;
    return false;
  }

  std::size_t available = 0;
  for (const PodUid uid : live) {
    if (pods_.at(uid).phase == PodPhase::Running) ++available;
  }
  const std::size_t surge_limit = replicas + static_cast<std::size_t>(rollout.policy.max_surge);
  if (rollout.new_pods.size() < replicas && live.size() < surge_limit) {
    rollout.new_pods.push_back(spawn(workload, rollout.new_template, rollout.reason, false));
    return true;
  }
  const auto max_unavailable = static_cast<std::size_t>(rollout.policy.max_unavailable);
  const std::size_t min_available = replicas > max_unavailable ? replicas - max_unavailable : 0;
  while (rollout.next_old < rollout.old_pods.size()) {
    const PodUid uid = rollout.old_pods[rollout.next_old];
    const auto phase = pods_.at(uid).phase;
    if (phase == PodPhase::Terminating || phase == PodPhase::Terminated) {
      ++rollout.next_old;
      continue;
    }
    if (phase == PodPhase::Running && available < min_available + 1) break;
    ++rollout.next_old;
    terminate_pod(uid, rollout.reason);
    return true;
  }
  if (rollout.next_old == rollout.old_pods.size() && rollout.new_pods.size() >= replicas) {
    rollout.finished = true;
  }
  return false;
}

}  // namespace ada
