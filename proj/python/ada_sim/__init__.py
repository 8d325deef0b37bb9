# Copyright 2026 The ADA Simulator Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# SPDX-License-Identifier: Apache-2.0

"""Python bindings for the ADA rotation simulator.

Reports cross the boundary as JSON text; the helpers below decode them.
"""

import json

from ._core import (
    ContainerMismatch,
    DocumentSyntaxError,
    Error,
    IncompatibleReports,
    IoError,
    MalformedLog,
    Scenario,
    ValidationError,
    canonical_policies,
    cli,
    parse_duration,
    parse_policies,
)
from . import _core

__all__ = [
    "ContainerMismatch",
    "DocumentSyntaxError",
    "Error",
    "IncompatibleReports",
    "IoError",
    "MalformedLog",
    "Scenario",
    "ValidationError",
    "aggregate",
    "canonical_policies",
    "cli",
    "compare",
    "compute_report",
    "parse_duration",
    "parse_policies",
    "run",
]


def run(scenario, threads=0):
    """Returns a list of (events, report) per replication.

    events is a list of event dicts, report a dict.
    """
    out = []
    for log, report in _core.run(scenario, threads):
        events = [json.loads(line) for line in log.splitlines() if line]
        out.append((events, json.loads(report)))
    return out


def compute_report(events, scenario, replication=0):
    log = "".join(json.dumps(e, separators=(",", ":")) + "\n" for e in events)
    return json.loads(_core.compute_report(log, scenario, replication))


def aggregate(reports):
    return json.loads(_core.aggregate([json.dumps(r) for r in reports]))


def compare(with_ada, baseline):
    return json.loads(_core.compare(json.dumps(with_ada), json.dumps(baseline)))
