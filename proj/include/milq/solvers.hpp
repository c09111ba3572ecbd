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

// Scheduling strategies: first-fit-decreasing baseline, the two MILP modes,
// an exhaustive oracle for small instances and a list-scheduling fallback.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "milq/core_model.hpp"
#include "milq/milp.hpp"
#include "milq/solver_adapter.hpp"

namespace milq {

enum class Strategy { baseline, simple, extended, oracle, greedy };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view text);

struct Bin {
  std::size_t machine = 0;
  int generation = 0;
  int remaining = 0;
  std::vector<std::size_t> contents;  // job indices in insertion order
  bool closed = false;
};

/// Bins in (generation, machine) order; every generation holds one bin per
/// machine.
struct Packing {
  std::vector<Bin> bins;
  int generations = 0;

  const Bin& bin(int generation, std::size_t machine, std::size_t machines) const {
    return bins[static_cast<std::size_t>(generation) * machines + machine];
  }
};

struct SolveResult {
  Schedule schedule;
  Strategy strategy = Strategy::baseline;
  std::optional<SolveStatus> solver_status;
  /// MILP objective scaled to time units, when a solver ran.
  std::optional<double> objective;
  double wall_time = 0.0;
};

/// First-fit decreasing over machine copies. Jobs are sorted by qubits
/// descending, ties by id; when no open bin fits, a new generation with one
/// bin per machine is appended. Throws InputError if a job fits no machine.
Packing ffd_pack(const Instance& instance);

/// Generation g on machine m starts when the last nonempty earlier generation
/// on m completes; completions use sequence-dependent evaluation.
Schedule schedule_packing(const Packing& packing, const Instance& instance);

SolveResult solve_baseline(const Instance& instance);

/// Builds, solves and extracts the chosen model. The shorter of the baseline
/// and greedy schedules (timed as the model times them) is passed to the
/// solver as a MIP start when it satisfies the model. Simple-mode schedules
/// are re-evaluated under the sequence-dependent setups.
SolveResult solve_milp(const Instance& instance, ModelMode mode, const SolverOptions& options,
                       bool warm_start = true);

inline constexpr std::size_t kDefaultOracleLimit = 5;
inline constexpr std::size_t kDefaultGridLimit = 4;

struct OracleReport {
  Time permutation_makespan = 0;
  /// Present when the start-time grid search ran (integer times only).
  std::optional<Time> grid_makespan;
  bool agree = true;
};

/// Exhaustive search. Every machine assignment and job order is timed by a
/// serial insertion that branches over start candidates: 0, the completions
/// already on the machine, and starts aligning the job's completion with an
/// existing start or completion (or one quantum past a completion). For
/// integer instances with at most `grid_limit` jobs a start-time grid search
/// over {0..t_max} runs as well and the better schedule is returned. Throws InputError when |J| > limit.
SolveResult solve_oracle(const Instance& instance, std::size_t limit = kDefaultOracleLimit,
                         OracleReport* report = nullptr,
                         std::size_t grid_limit = kDefaultGridLimit);

/// Longest-processing-time-first list scheduling: each job takes the machine
/// and earliest feasible start (0 or a completion on that machine) giving the
/// smallest makespan.
SolveResult solve_greedy(const Instance& instance);

/// Capacity check over half-open intervals for a (possibly partial) schedule.
bool capacity_feasible(std::span<const ScheduleEntry> entries, const Instance& instance);

}  // namespace milq
