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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "ada/cli.hpp"
#include "ada/errors.hpp"
#include "ada/event_log.hpp"
#include "ada/metrics.hpp"
#include "ada/policy.hpp"
#include "ada/report_io.hpp"
#include "ada/scenario.hpp"
#include "ada/simulation.hpp"
#include "ada/time.hpp"

namespace py = pybind11;

namespace {

py::dict selector_dict(const ada::LabelSelector& selector) {
  py::dict out;
  out["match_labels"] = selector.match_labels;
  return out;
}

py::dict mutation_dict(const ada::MutationSpec& mutation) {
  py::dict out;
  out["type"] = std::string(ada::mutation_type_name(mutation));
  out["container_name"] = ada::container_of(mutation);
  if (const auto* image = std::get_if<ada::ContainerImageUpdate>(&mutation)) {
    out["new_image"] = image->new_image;
  } else if (const auto* resources = std::get_if<ada::ResourceAdjustment>(&mutation)) {
    out["limits"] = resources->limits;
    out["requests"] = resources->requests;
  } else if (const auto* patch = std::get_if<ada::EnvPatch>(&mutation)) {
    py::list env;
    for (const auto& [name, value] : patch->env) env.append(py::make_tuple(name, value));
    out["env"] = env;
  }
  return out;
}

py::dict policy_dict(const ada::PolicyDocument& document) {
  py::dict out;
  if (const auto* rotation = std::get_if<ada::RotationPolicy>(&document)) {
    out["kind"] = "RotationPolicy";
    out["name"] = rotation->name;
    out["selector"] = selector_dict(rotation->selector);
    out["rotation_interval_s"] = ada::to_seconds(rotation->rotation_interval);
    out["strategy"] = std::string(ada::to_string(rotation->strategy));
    out["max_surge"] = rotation->max_surge;
    out["max_unavailable"] = rotation->max_unavailable;
    return out;
  }
  const auto& policy = std::get<ada::ContextMutationPolicy>(document);
  out["kind"] = "ContextMutationPolicy";
  out["name"] = policy.name;
  out["selector"] = selector_dict(policy.selector);
  py::list triggers;
  for (const auto& trigger : policy.triggers) {
    triggers.append(py::make_tuple(std::string(ada::to_string(trigger.source_kind)), trigger.identifier));
  }
  out["triggers"] = triggers;
  py::list mutations;
  for (const auto& mutation : policy.mutations) mutations.append(mutation_dict(mutation));
  out["mutations"] = mutations;
  return out;
}

std::string serialize_document(const ada::PolicyDocument& document) {
  return std::visit([](const auto& policy) { return ada::serialize(policy); }, document);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moving target defense rotation simulator core";

  auto base = py::register_exception<ada::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ada::SyntaxError>(m, "DocumentSyntaxError", base.ptr());
  py::register_exception<ada::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ada::IoError>(m, "IoError", base.ptr());
  py::register_exception<ada::MalformedLog>(m, "MalformedLog", base.ptr());
  py::register_exception<ada::IncompatibleReports>(m, "IncompatibleReports", base.ptr());
  py::register_exception<ada::ContainerMismatch>(m, "ContainerMismatch", base.ptr());

  m.def("parse_duration", [](const std::string& text) -> std::optional<double> {
    const auto d = ada::parse_duration(text);
    return d ? std::optional(ada::to_seconds(*d)) : std::nullopt;
  });

  m.def(
      "parse_policies",
      [](const std::string& text) {
        py::list out;
        for (const auto& document : ada::parse_policy_documents(text)) out.append(policy_dict(document));
        return out;
      },
      py::arg("text"), "Parses and validates policy documents into dictionaries.");

  m.def(
      "canonical_policies",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& document : ada::parse_policy_documents(text)) out.push_back(serialize_document(document));
        return out;
      },
      py::arg("text"), "Re-serializes each policy document in canonical layout.");

  py::class_<ada::ScenarioScript>(m, "Scenario")
      .def_static("from_file", &ada::load_scenario_file, py::arg("path"))
      .def_static(
          "from_text", [](const std::string& text, const std::string& base_dir) { return ada::load_scenario(text, base_dir); },
          py::arg("text"), py::arg("base_dir") = "")
      .def_property_readonly("name", [](const ada::ScenarioScript& s) { return s.name; })
      .def_property_readonly("horizon_s", [](const ada::ScenarioScript& s) { return ada::to_seconds(s.horizon); })
      .def_property_readonly("workloads",
                             [](const ada::ScenarioScript& s) {
                               std::vector<std::string> names;
                               for (const auto& w : s.workloads) names.push_back(w.name);
                               return names;
                             })
      .def_property_readonly("has_attacker", [](const ada::ScenarioScript& s) { return s.attacker.has_value(); })
      .def_readwrite("seed", &ada::ScenarioScript::seed)
      .def_readwrite("replications", &ada::ScenarioScript::replications)
      .def_readwrite("ada_enabled", &ada::ScenarioScript::ada_enabled)
      .def("validate", [](const ada::ScenarioScript& s) { ada::validate(s); })
      .def("__repr__", [](const ada::ScenarioScript& s) {
        return "<Scenario '" + s.name + "' replications=" + std::to_string(s.replications) + ">";
      });

  m.def(
      "run",
      [](const ada::ScenarioScript& script, unsigned threads) {
        std::vector<ada::ReplicationResult> results;
        {
          py::gil_scoped_release release;
          results = ada::run(script, threads);
        }
        std::vector<std::pair<std::string, std::string>> out;
        out.reserve(results.size());
        for (const auto& r : results) out.emplace_back(r.log.to_ndjson(), ada::to_json_text(r.report));
        return out;
      },
      py::arg("scenario"), py::arg("threads") = 0,
      "Runs every replication; returns (event log NDJSON, report JSON) pairs in replication order.");

  m.def(
      "compute_report",
      [](const std::string& ndjson, const ada::ScenarioScript& script, int replication) {
        return ada::to_json_text(ada::compute_report(ada::EventLog::from_ndjson(ndjson), script, replication));
      },
      py::arg("log"), py::arg("scenario"), py::arg("replication") = 0);

  m.def(
      "aggregate",
      [](const std::vector<std::string>& reports) {
        std::vector<ada::MetricsReport> parsed;
        for (const auto& text : reports) {
          auto document = ada::report_from_json_text(text);
          if (!std::holds_alternative<ada::MetricsReport>(document)) {
            throw ada::IncompatibleReports("aggregate expects replication reports");
          }
          parsed.push_back(std::get<ada::MetricsReport>(std::move(document)));
        }
        return ada::to_json_text(ada::aggregate(parsed));
      },
      py::arg("reports"));

  m.def(
      "compare",
      [](const std::string& with_ada, const std::string& baseline) {
        return ada::to_json_text(
            ada::compare(ada::report_from_json_text(with_ada), ada::report_from_json_text(baseline)));
      },
      py::arg("with_ada"), py::arg("baseline"));

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = ada::cli::main(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line interface; returns (exit code, stdout, stderr).");
}
