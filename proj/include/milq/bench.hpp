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

// Benchmark harness: random batches per hardware scenario, strategy runs,
// improvement statistics and Gantt rendering.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milq/core_model.hpp"
#include "milq/solvers.hpp"
#include "milq/timing.hpp"

namespace milq {

struct Scenario {
  std::string name;
  std::vector<Machine> machines;
  int batches = 10;
  int batch_size = 7;
  TimingConfig timing;
  int min_width = 2;
  int min_depth = 5;
  int max_depth = 50;
  /// t_max = ceil(t_max_factor * baseline makespan / granularity).
  double t_max_factor = 1.2;
  double granularity = 1.0;
};

/// "paper-two-qpu" (capacities 5, 5) and "paper-three-qpu" (5, 6, 20), both
/// 10 batches of 7 circuits in integer mode. Throws InputError otherwise.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Throws InputError when a field is out of range.
void check_scenario(const Scenario& scenario);

/// Seed of batch `batch`: scenario seed + batch index.
std::uint64_t batch_seed(const Scenario& scenario, int batch);

/// Sets t_max = max(ceil(factor * baseline makespan / granularity), lower
/// bound) and big_m = t_max + sum of the jobs' largest slot durations + 1.
void size_horizon(Instance& instance, double factor = 1.2);

/// Jobs J1..Jn with widths in [min_width, max capacity] and depths in
/// [min_depth, max_depth]; timing from the batch seed; t_max from the
/// baseline makespan (at least the instance lower bound) and
/// big_m = t_max + largest total duration + 1.
Instance gen_batch(const Scenario& scenario, int batch);

/// The worked example: circuit A (width 7) and B (width 3) cut for two
/// capacity-5 machines with 4 variants per cut, big_m 1000, t_max 64.
Instance example_instance(std::uint64_t seed = 1);

struct BenchRow {
  std::string scenario;
  int batch = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::baseline;
  std::optional<Time> makespan;
  /// "ok" for heuristics, the solver status for MILP runs, "failed" or
  /// "unavailable" otherwise.
  std::string status;
  std::string message;
  double wall_time = 0.0;
};

struct ScenarioSummary {
  std::string scenario;
  /// Mean of (baseline - strategy) / baseline over batches with both values.
  std::optional<double> mean_improvement_simple;
  std::optional<double> mean_improvement_extended;
  std::optional<double> mean_improvement_greedy;
  /// Batches where the re-evaluated simple schedule is slower than baseline.
  int simple_worse_than_baseline = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<ScenarioSummary> summaries;
};

struct BenchOptions {
  std::vector<Strategy> strategies{Strategy::baseline};
  SolverOptions solver;
  unsigned workers = 1;
  /// Oracle runs only for batches within this size.
  std::size_t oracle_limit = kDefaultOracleLimit;
  /// Directory for one Gantt SVG per (scenario, batch, strategy); empty = none.
  std::string gantt_dir;
};

/// Runs every strategy on every batch. Batches are processed by a worker
/// pool; rows are assembled in (scenario, batch, strategy) order. Solver
/// failures are recorded per row.
BenchReport run_scenarios(std::span<const Scenario> scenarios, const BenchOptions& options);

/// CSV with header scenario,batch,seed,strategy,makespan,status,wall_time_s.
/// The wall-time column is left empty when `wall_time` is false.
std::string report_csv(const BenchReport& report, bool wall_time = true);

/// JSON mirror of the report (rows and summaries).
std::string report_json(const BenchReport& report, bool wall_time = true);

/// SVG Gantt chart: one lane per machine (height proportional to capacity),
/// one labeled rect per job stacked by qubit offset.
std::string render_gantt(const Schedule& schedule, const Instance& instance);

}  // namespace milq
