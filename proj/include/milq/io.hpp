// Copyright 2026 The milq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents (schemas under schemas/) and file helpers. Parsers throw
// InputError with the offending field named.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "milq/bench.hpp"
#include "milq/core_model.hpp"
#include "milq/cutter.hpp"

namespace milq {

std::string read_file(const std::string& path);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view text);

/// Instance document. Timing is keyed by ids:
///   processing: {job: {machine: p}}, setup: {pred: {job: {machine: s}}}
/// with pred "0" for the dummy job. Absent entries stay missing and are
/// reported by validate_instance.
Instance instance_from_json(std::string_view text);
std::string instance_to_json(const Instance& instance);

/// Schedule document: {entries: [{job, machine, start, completion}], makespan}.
Schedule schedule_from_json(std::string_view text, const Instance& instance);
std::string schedule_to_json(const Schedule& schedule, const Instance& instance);

/// Accept either {"circuits": [...]} or a bare array (likewise below).
std::vector<CircuitSpec> circuits_from_json(std::string_view text);
std::vector<Machine> machines_from_json(std::string_view text);
std::vector<CircuitJob> jobs_from_json(std::string_view text);
std::string jobs_to_json(const std::vector<CircuitJob>& jobs);

/// {circuit_id: [{job_id, fragment_index, variant_index, width}]}
std::string manifest_to_json(const std::vector<ManifestGroup>& manifest);

/// Scenario document; omitted fields keep the Scenario defaults.
Scenario scenario_from_json(std::string_view text);

}  // namespace milq
