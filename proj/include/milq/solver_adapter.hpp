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

// External solver invocation through a command template. Placeholders:
// {lp} model path, {sol} solution path, {gap}, {time_limit} and {start}
// (MIP start file, empty when none is given).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milq/milp.hpp"

namespace milq {

inline constexpr const char* kSolverEnv = "MILQ_SOLVER_CMD";

struct SolverOptions {
  /// Command template; when unset the environment variable is consulted.
  std::optional<std::string> command;
  double gap = 0.2;
  double time_limit = 60.0;
};

/// Explicit template first, then MILQ_SOLVER_CMD; nullopt when neither is set
/// or the value is blank.
std::optional<std::string> resolve_solver_command(const std::optional<std::string>& explicit_cmd);

/// Replaces the placeholders in `tmpl`. Paths are single-quoted for the shell.
std::string expand_command(const std::string& tmpl, const std::string& lp_path,
                           const std::string& sol_path, double gap, double time_limit,
                           const std::string& start_path);

/// Serializes the model, runs the solver and parses its answer. Throws
/// SolverUnavailable when no command is configured and SolverFailure when the
/// process fails or writes no solution.
MilpSolution run_solver(const MilpModel& model, const SolverOptions& options,
                        const std::vector<double>* start = nullptr);

}  // namespace milq
