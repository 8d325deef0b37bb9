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

#include <nlohmann/json.hpp>
#include <sstream>

#include "ada/errors.hpp"
#include "ada/report_io.hpp"
#include "ada/simulation.hpp"
#include "support/builders.hpp"

namespace ada {
namespace {

std::vector<MetricsReport> fixture_reports(const std::string& name) {
  auto script = load_scenario_file(testing::scenario_fixture(name));
  script.replications = 4;
  std::vector<MetricsReport> out;
  for (auto& r : run(script, 1)) out.push_back(std::move(r.report));
  return out;
}

TEST(ReportJson, ReplicationRoundTrip) {
  for (const auto& report : fixture_reports("compromised-nim")) {
    const auto text = to_json_text(report);
    const auto back = report_from_json_text(text);
    ASSERT_TRUE(std::holds_alternative<MetricsReport>(back));
    EXPECT_EQ(std::get<MetricsReport>(back), report);
    EXPECT_EQ(to_json_text(std::get<MetricsReport>(back)), text);
  }
}

TEST(ReportJson, AggregateRoundTrip) {
  auto agg = aggregate(fixture_reports("compromised-nim"));
  agg.baseline_comparison = compare(agg, agg);
  const auto text = to_json_text(agg);
  const auto back = report_from_json_text(text);
  ASSERT_TRUE(std::holds_alternative<AggregateReport>(back));
  EXPECT_EQ(std::get<AggregateReport>(back), agg);
}

TEST(ReportJson, FieldConventions) {
  const auto report = fixture_reports("killchain-disruption").front();
  const auto json = nlohmann::json::parse(to_json_text(report));
  EXPECT_EQ(json.at("report_type"), "replication");
  EXPECT_TRUE(json.at("horizon_us").is_number_integer());
  EXPECT_TRUE(json.at("tte").at("mean_us").is_number_integer());
  EXPECT_TRUE(json.at("effort_ratio").is_null());
  EXPECT_TRUE(json.contains("churn_rate_per_hour"));
}

TEST(ReportJson, Errors) {
  EXPECT_THROW(report_from_json_text("{"), SyntaxError);
  EXPECT_THROW(report_from_json_text(R"({"report_type":"replication"})"), ValidationError);
  EXPECT_THROW(report_from_json_text(R"({"report_type":"comparison"})"), ValidationError);
  EXPECT_THROW(report_from_json_text("[]"), ValidationError);
}

TEST(ReportJson, MixedTypesIncompatible) {
  const auto reports = fixture_reports("killchain-disruption");
  const ReportDocument one = reports.front();
  const ReportDocument agg = aggregate(reports);
  EXPECT_THROW(compare(one, agg), IncompatibleReports);
  EXPECT_NO_THROW(compare(agg, agg));
}

TEST(ReportCsv, HeaderAndRows) {
  const auto reports = fixture_reports("killchain-disruption");
  const auto csv = to_csv(reports);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  std::string expected;
  for (const auto& c : csv_columns()) expected += (expected.empty() ? "" : ",") + c;
  EXPECT_EQ(header, expected);
  EXPECT_EQ(csv_columns().front(), "scenario");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), static_cast<long>(csv_columns().size() - 1));
  }
  EXPECT_EQ(rows, reports.size());
}

TEST(ReportCsv, AbsentRatesAreEmptyCells) {
  MetricsReport r;
  r.scenario = "s";
  r.horizon = testing::seconds(10);
  const auto csv = to_csv({r});
  const auto row = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(row.find(",,"), std::string::npos);
}

}  // namespace
}  // namespace ada
