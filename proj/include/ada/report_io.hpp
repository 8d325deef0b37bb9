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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ada/metrics.hpp"

namespace ada {

// Pretty-printed JSON documents, newline terminated. Every document carries
// "report_type": "replication", "aggregate" or "comparison". Durations are
// integer microseconds (suffix _us); absent optionals are null.
std::string to_json_text(const MetricsReport& report);
std::string to_json_text(const AggregateReport& report);
std::string to_json_text(const Comparison& comparison);

using ReportDocument = std::variant<MetricsReport, AggregateReport>;

// Inverse of to_json_text for replication and aggregate reports. Throws
// SyntaxError for invalid JSON and ValidationError for missing or mistyped
// fields.
ReportDocument report_from_json_text(std::string_view text);

// Throws IncompatibleReports when the documents are of different types.
Comparison compare(const ReportDocument& with_ada, const ReportDocument& baseline);

// Column names of the per-replication CSV export, in order.
const std::vector<std::string>& csv_columns();

// Header plus one row per report. Seconds use six decimals; absent values
// are empty cells.
std::string to_csv(const std::vector<MetricsReport>& reports);

}  // namespace ada
