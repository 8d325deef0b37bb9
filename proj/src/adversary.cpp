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

#include "ada/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "ada/errors.hpp"

namespace ada {

Duration sample(const DurationDist& dist, Rng& rng) {
  struct Sampler {
    Rng& rng;
    Duration operator()(const Deterministic& d) const { return d.value; }
    Duration operator()(const Exponential& d) const {
      return Duration{std::llround(rng.exponential(static_cast<double>(d.mean.count())))};
    }
    Duration operator()(const Uniform& d) const {
      const double span = static_cast<double>((d.hi - d.lo).count());
      return d.lo + Duration{std::llround(rng.uniform01() * span)};
    }
  };
  return std::visit(Sampler{rng}, dist);
}

double mean_seconds(const DurationDist& dist) {
  struct Mean {
    double operator()(const Deterministic& d) const { return to_seconds(d.value); }
    double operator()(const Exponential& d) const { return to_seconds(d.mean); }
    double operator()(const Uniform& d) const { return (to_seconds(d.lo) + to_seconds(d.hi)) / 2.0; }
  };
  return std::visit(Mean{}, dist);
}

namespace {

void validate_dist(const DurationDist& dist, const std::string& path, bool allow_zero) {
  if (const auto* d = std::get_if<Deterministic>(&dist)) {
    if (d->value < Duration::zero() || (!allow_zero && d->value == Duration::zero())) {
      throw ValidationError(path, allow_zero ? "duration must be non-negative" : "duration must be positive");
    }
  } else if (const auto* e = std::get_if<Exponential>(&dist)) {
    if (e->mean <= Duration::zero()) throw ValidationError(path, "mean must be positive");
  } else if (const auto* u = std::get_if<Uniform>(&dist)) {
    if (u->lo < Duration::zero() || (!allow_zero && u->lo == Duration::zero())) {
      throw ValidationError(path, allow_zero ? "min must be non-negative" : "min must be positive");
    }
    if (!(u->lo < u->hi)) throw ValidationError(path, "min must be less than max");
  }
}

}  // namespace

void validate(const AttackerConfig& config, const std::string& path) {
  if (const auto* poisson = std::get_if<PoissonArrival>(&config.arrival)) {
    if (!(poisson->rate_per_second > 0.0) || !std::isfinite(poisson->rate_per_second)) {
      throw ValidationError(path + ".arrival.ratePerSecond", "rate must be positive");
    }
  } else if (std::get<AtTime>(config.arrival).at < Duration::zero()) {
    throw ValidationError(path + ".arrival.time", "must be non-negative");
  }
  if (config.kill_chain.empty()) throw ValidationError(path + ".killChain", "at least one stage is required");
  for (std::size_t i = 0; i < config.kill_chain.size(); ++i) {
    const std::string stage_path = path + ".killChain[" + std::to_string(i) + "]";
    if (config.kill_chain[i].name.empty()) throw ValidationError(stage_path + ".name", "must not be empty");
    validate_dist(config.kill_chain[i].duration, stage_path + ".duration", false);
  }
  validate_dist(config.retry_delay, path + ".retryDelay", true);
  validate(config.target_selector, path + ".targetSelector.matchLabels");
}

bool AttackerState::conserved() const {
  return attempts == completions + disruptions + (bound() ? 1 : 0) + starved;
}

bool pod_eligible(const AttackerConfig& config, const PodInstance& pod) {
  if (pod.phase != PodPhase::Running) return false;
  if (!selector_matches(config.target_selector, pod.pod_template.labels)) return false;
  if (config.requires_gpu) {
    const auto it = pod.pod_template.resource_limits.find(std::string(kGpuResource));
    if (it != pod.pod_template.resource_limits.end() && it->second == "0") return false;
  }
  return true;
}

namespace {

Duration poisson_gap(const PoissonArrival& arrival, Rng& rng) {
  return Duration{std::llround(rng.exponential(1e6 / arrival.rate_per_second))};
}

void schedule_retry(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp from,
                    bool after_starvation) {
  Duration delay = sample(config.retry_delay, state.rng());
  if (const auto* poisson = std::get_if<PoissonArrival>(&config.arrival)) delay += poisson_gap(*poisson, state.rng());
  ++attacker.attempt_generation;
  if (after_starvation && delay == Duration::zero()) {
    // Retrying at the same instant would find the same empty cluster.
    attacker.parked = true;
    return;
  }
  state.timers().push(from + delay, timer::AttackAttempt{attacker.attempt_generation});
}

void start_stage(Binding& binding, const AttackerConfig& config, ClusterState& state, Timestamp at) {
  binding.stage_completes_at = at + sample(config.kill_chain[binding.stage_index].duration, state.rng());
  state.timers().push(binding.stage_completes_at, timer::StageCompletion{binding.serial});
}

}  // namespace

void schedule_arrival(AttackerState& attacker, const AttackerConfig& config, ClusterState& state) {
  ++attacker.attempt_generation;
  Timestamp first = state.clock();
  if (const auto* at = std::get_if<AtTime>(&config.arrival)) {
    first = std::max(first, kEpoch + at->at);
  } else {
    first += poisson_gap(std::get<PoissonArrival>(config.arrival), state.rng());
  }
  state.timers().push(first, timer::AttackAttempt{attacker.attempt_generation});
}

bool attempt_compromise(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at) {
  if (attacker.stopped || attacker.bound()) return false;
  attacker.parked = false;
  ++attacker.attempts;

  std::vector<const PodInstance*> eligible;
  for (const auto& [uid, pod] : state.pods()) {
    if (pod_eligible(config, pod)) eligible.push_back(&pod);
  }
  if (eligible.empty()) {
    ++attacker.starved;
    state.log().append(at, EventKind::CompromiseAttemptFailed, "attacker",
                       {{"attempt", std::to_string(attacker.attempts)}, {"reason", "no eligible pod"}});
    schedule_retry(attacker, config, state, at, true);
    return false;
  }

  const PodInstance& target = *eligible[state.rng().uniform_index(eligible.size())];
  Binding binding;
  binding.pod = target.uid;
  binding.established_at = at;
  binding.serial = attacker.next_binding_serial++;
  binding.stage_index = config.remnants_survive_rotation ? attacker.carried_stages : 0;
  state.log().append(at, EventKind::CompromiseEstablished, to_string(target.uid),
                     {{"workload", target.workload},
                      {"attempt", std::to_string(attacker.attempts)},
                      {"stage", config.kill_chain[binding.stage_index].name}});
  start_stage(binding, config, state, at);
  attacker.binding = binding;
  return true;
}

void on_pod_terminated(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, PodUid uid,
                       Timestamp at) {
  if (!attacker.binding || attacker.binding->pod != uid) return;
  const Binding binding = *attacker.binding;
  attacker.binding.reset();
  const Duration dwell = at - binding.established_at;
  attacker.dwell_samples.push_back(dwell);
  ++attacker.disruptions;
  if (config.remnants_survive_rotation) attacker.carried_stages = binding.stage_index;
  state.log().append(at, EventKind::CompromiseDisrupted, to_string(uid),
                     {{"stage", config.kill_chain[binding.stage_index].name},
                      {"stage_index", std::to_string(binding.stage_index)},
                      {"dwell_us", std::to_string(dwell.count())}});
  schedule_retry(attacker, config, state, at, false);
}

void on_pod_ready(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at) {
  if (attacker.parked && !attacker.bound() && !attacker.stopped) attempt_compromise(attacker, config, state, at);
}

void advance(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, Timestamp at) {
  if (!attacker.binding) return;
  Binding& binding = *attacker.binding;
  const std::string subject = to_string(binding.pod);
  state.log().append(at, EventKind::KillChainStageCompleted, subject,
                     {{"stage", config.kill_chain[binding.stage_index].name},
                      {"stage_index", std::to_string(binding.stage_index)}});
  ++binding.stage_index;
  if (binding.stage_index < config.kill_chain.size()) {
    start_stage(binding, config, state, at);
    return;
  }
  const Duration dwell = at - binding.established_at;
  state.log().append(at, EventKind::KillChainCompleted, subject, {{"dwell_us", std::to_string(dwell.count())}});
  attacker.dwell_samples.push_back(dwell);
  ++attacker.completions;
  attacker.binding.reset();
  attacker.carried_stages = 0;
  if (config.repeat_after_completion) {
    schedule_retry(attacker, config, state, at, false);
  } else {
    attacker.stopped = true;
  }
}

bool fire(AttackerState& attacker, const AttackerConfig& config, ClusterState& state, const TimerAction& action) {
  if (const auto* attempt = std::get_if<timer::AttackAttempt>(&action)) {
    if (attempt->generation == attacker.attempt_generation) attempt_compromise(attacker, config, state, state.clock());
    return true;
  }
  if (const auto* stage = std::get_if<timer::StageCompletion>(&action)) {
    if (attacker.binding && attacker.binding->serial == stage->binding &&
        attacker.binding->stage_completes_at == state.clock()) {
      advance(attacker, config, state, state.clock());
    }
    return true;
  }
  return false;
}

}  // namespace ada
