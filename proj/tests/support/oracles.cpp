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

#include "oracles.hpp"

#include <cmath>
#include <random>

namespace ada::testing {

double erlang_cdf(int k, double stage_mean, double x) {
  const double lx = x / stage_mean;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < k; ++n) {
    term *= lx / n;
    sum += term;
  }
  return 1.0 - std::exp(-lx) * sum;
}

double monte_carlo_erlang(int k, double stage_mean, double x, std::uint64_t draws, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> stage(1.0 / stage_mean);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    double total = 0.0;
    for (int s = 0; s < k; ++s) total += stage(gen);
    if (total <= x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

Moments residual_dwell_closed_form(double rate, double interval) {
  // R = E mod T is exponential truncated to [0, T).
  const double t = interval;
  const double q = std::exp(-rate * t);
  const double mean_r = 1.0 / rate - t * q / (1.0 - q);
  const double second_r =
      (2.0 / (rate * rate) - q * (t * t + 2.0 * t / rate + 2.0 / (rate * rate))) / (1.0 - q);
  return {t - mean_r, second_r - mean_r * mean_r};
}

Moments uniform_residual(double interval) { return {interval / 2.0, interval * interval / 12.0}; }

std::vector<double> brute_force_residual_dwell(double rate, double interval, double horizon, int replications,
                                               std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> gap(rate);
  std::vector<double> samples;
  for (int r = 0; r < replications; ++r) {
    double now = 0.0;
    for (;;) {
      const double arrival = now + gap(gen);
      const double rotation = (std::floor(arrival / interval) + 1.0) * interval;
      if (rotation > horizon) break;
      samples.push_back(rotation - arrival);
      now = rotation;
    }
  }
  return samples;
}

Moments sample_moments(const std::vector<double>& samples) {
  Moments m;
  if (samples.empty()) return m;
  for (const double s : samples) m.mean += s;
  m.mean /= static_cast<double>(samples.size());
  if (samples.size() < 2) return m;
  for (const double s : samples) m.variance += (s - m.mean) * (s - m.mean);
  m.variance /= static_cast<double>(samples.size() - 1);
  return m;
}

}  // namespace ada::testing
