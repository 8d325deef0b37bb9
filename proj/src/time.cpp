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

#include "ada/time.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace ada {

std::optional<Duration> parse_duration(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  const char unit = text.back();
  std::int64_t scale = 0;
  switch (unit) {
    case 's':
      scale = 1'000'000;
      break;
    case 'm':
      scale = 60'000'000;
      break;
    case 'h':
      scale = 3'600'000'000;
      break;
    default:
      return std::nullopt;
  }
  const std::string_view digits = text.substr(0, text.size() - 1);
  if (digits.empty() || digits.front() < '0' || digits.front() > '9') return std::nullopt;
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size()) return std::nullopt;
  if (value > std::numeric_limits<std::int64_t>::max() / scale) return std::nullopt;
  return Duration{value * scale};
}

std::string format_duration(Duration d) {
  constexpr std::int64_t kSecond = 1'000'000;
  if (d.count() < 0 || d.count() % kSecond != 0) {
    throw std::invalid_argument("duration " + std::to_string(d.count()) + "us is not a whole number of seconds");
  }
  return std::to_string(d.count() / kSecond) + "s";
}

}  // namespace ada
