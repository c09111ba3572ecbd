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

// milq command-line tool.
//
// Exit codes: 0 success, 2 input or validation error, 3 no solver
// configured, 4 solver failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "milq/bench.hpp"
#include "milq/cutter.hpp"
#include "milq/errors.hpp"
#include "milq/io.hpp"
#include "milq/milp.hpp"
#include "milq/solvers.hpp"
#include "milq/timing.hpp"

namespace {

using namespace milq;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoSolver = 3;
constexpr int kExitSolver = 4;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(path, text);
  }
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw InputError(std::string(what) + " file not found: " + path);
  }
}

TimeMode parse_mode(const std::string& mode) {
  if (mode == "int" || mode == "integer") return TimeMode::integer;
  if (mode == "real") return TimeMode::real;
  throw InputError("--mode must be int or real");
}

// cut -----------------------------------------------------------------------

struct CutArgs {
  std::string circuits, machines, out = "-", manifest;
  int variants = kDefaultVariantsPerCut;
  std::size_t job_cap = kDefaultJobCap;
};

int cmd_cut(const CutArgs& a) {
  require_file(a.circuits, "circuits");
  require_file(a.machines, "machines");
  auto circuits = circuits_from_json(read_file(a.circuits));
  auto machines = machines_from_json(read_file(a.machines));
  auto result = resize_batch(circuits, machines, a.variants, a.job_cap);
  emit(a.out, jobs_to_json(result.jobs));
  if (!a.manifest.empty()) emit(a.manifest, manifest_to_json(result.manifest));
  std::cerr << "cut: " << circuits.size() << " circuits -> " << result.jobs.size() << " jobs\n";
  return kExitOk;
}

// instance ------------------------------------------------------------------

struct InstanceArgs {
  std::string jobs, machines, out = "-", mode = "int";
  bool example = false;
  std::uint64_t seed = 1;
  std::optional<int> t_max;
  std::optional<double> big_m;
  double granularity = 1.0;
  TimingConfig timing;
};

int cmd_instance(InstanceArgs a) {
  Instance inst;
  a.timing.seed = a.seed;
  a.timing.mode = parse_mode(a.mode);
  if (a.example) {
    inst = example_instance(a.seed);
  } else {
    require_file(a.jobs, "jobs");
    require_file(a.machines, "machines");
    inst.jobs = jobs_from_json(read_file(a.jobs));
    inst.machines = machines_from_json(read_file(a.machines));
    inst.granularity = a.granularity;
    inst.timing = synthesize_timing(inst.jobs, inst.machines, a.timing);
    size_horizon(inst);
  }
  if (a.t_max) inst.t_max = *a.t_max;
  if (a.big_m) inst.big_m = *a.big_m;
  auto violations = validate_instance(inst);
  for (const auto& v : violations) std::cerr << "instance: " << v << "\n";
  emit(a.out, instance_to_json(inst));
  return violations.empty() ? kExitOk : kExitInput;
}

// schedule ------------------------------------------------------------------

struct ScheduleArgs {
  std::string instance, strategy = "extended", out = "-", emit_lp, gantt;
  std::optional<std::string> solver_cmd;
  double gap = 0.2, time_limit = 60.0;
  std::size_t oracle_limit = kDefaultOracleLimit;
  bool no_warm_start = false;
};

int cmd_schedule(const ScheduleArgs& a) {
  require_file(a.instance, "instance");
  auto strategy = parse_strategy(a.strategy);
  if (!strategy) throw InputError("unknown strategy '" + a.strategy + "'");
  Instance inst = instance_from_json(read_file(a.instance));
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "instance: " << v << "\n";
    return kExitInput;
  }

  if (!a.emit_lp.empty()) {
    const bool simple = *strategy == Strategy::simple;
    MilpModel model = simple ? build_simple(inst, aggregate_setup_max(inst.timing))
                             : build_extended(inst);
    emit(a.emit_lp, serialize_lp(model));
    std::cerr << to_string(model.mode) << " model: " << model.stats.num_variables
              << " variables, " << model.stats.num_constraints << " constraints\n";
    for (const auto& [family, size] : model.space.family_sizes()) {
      std::cerr << "  " << family << ": " << size << "\n";
    }
    return kExitOk;
  }

  SolverOptions solver{a.solver_cmd, a.gap, a.time_limit};
  SolveResult result;
  switch (*strategy) {
    case Strategy::baseline:
      result = solve_baseline(inst);
      break;
    case Strategy::greedy:
      result = solve_greedy(inst);
      break;
    case Strategy::oracle: {
      OracleReport report;
      result = solve_oracle(inst, a.oracle_limit, &report);
      if (report.grid_makespan && !report.agree) {
        std::cerr << "oracle: permutation search " << format_time(report.permutation_makespan)
                  << " disagrees with grid search " << format_time(*report.grid_makespan)
                  << "\n";
      }
      break;
    }
    case Strategy::simple:
      result = solve_milp(inst, ModelMode::simple, solver, !a.no_warm_start);
      break;
    case Strategy::extended:
      result = solve_milp(inst, ModelMode::extended, solver, !a.no_warm_start);
      break;
  }
  emit(a.out, schedule_to_json(result.schedule, inst));
  if (!a.gantt.empty()) emit(a.gantt, render_gantt(result.schedule, inst));
  std::cerr << to_string(result.strategy) << ": makespan " << format_time(result.schedule.makespan);
  if (result.solver_status) std::cerr << " (" << to_string(*result.solver_status) << ")";
  std::cerr << "\n";
  auto problems = validate_schedule(result.schedule, inst);
  for (const auto& p : problems) std::cerr << "schedule: " << p << "\n";
  if (!problems.empty()) {
    std::cerr << "hint: raise t_max if the schedule leaves the horizon\n";
    return kExitInput;
  }
  return kExitOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> scenarios{"paper-two-qpu"};
  std::string strategies = "baseline,greedy", csv = "-", json, gantt_dir;
  std::optional<std::string> solver_cmd, mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> batches;
  double gap = 0.2, time_limit = 60.0;
  unsigned workers = 1;
  std::size_t oracle_limit = kDefaultOracleLimit;
  bool no_wall_time = false;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<Scenario> scenarios;
  auto builtin = builtin_scenario_names();
  for (const auto& name : a.scenarios) {
    if (std::find(builtin.begin(), builtin.end(), name) != builtin.end()) {
      scenarios.push_back(builtin_scenario(name));
    } else {
      require_file(name, "scenario");
      scenarios.push_back(scenario_from_json(read_file(name)));
    }
    if (a.seed) scenarios.back().timing.seed = *a.seed;
    if (a.mode) scenarios.back().timing.mode = parse_mode(*a.mode);
    if (a.batches) scenarios.back().batches = *a.batches;
  }
  BenchOptions options;
  options.strategies.clear();
  std::stringstream list(a.strategies);
  for (std::string item; std::getline(list, item, ',');) {
    auto s = parse_strategy(item);
    if (!s) throw InputError("unknown strategy '" + item + "'");
    options.strategies.push_back(*s);
  }
  if (options.strategies.empty()) throw InputError("--strategies is empty");
  options.solver = {a.solver_cmd, a.gap, a.time_limit};
  options.workers = a.workers;
  options.oracle_limit = a.oracle_limit;
  options.gantt_dir = a.gantt_dir;
  const bool wants_milp = std::any_of(options.strategies.begin(), options.strategies.end(),
                                      [](Strategy s) {
                                        return s == Strategy::simple || s == Strategy::extended;
                                      });
  if (wants_milp && !resolve_solver_command(a.solver_cmd)) {
    std::cerr << "bench: no solver configured; MILP rows are recorded as unavailable\n";
  }

  BenchReport report = run_scenarios(scenarios, options);
  emit(a.csv, report_csv(report, !a.no_wall_time));
  if (!a.json.empty()) emit(a.json, report_json(report, !a.no_wall_time));
  for (const auto& s : report.summaries) {
    std::cerr << s.scenario << ":";
    auto show = [](const char* label, const std::optional<double>& v) {
      if (v) std::cerr << " " << label << " " << format_time(std::round(*v * 1e4) / 1e2) << "%";
    };
    show("simple", s.mean_improvement_simple);
    show("extended", s.mean_improvement_extended);
    show("greedy", s.mean_improvement_greedy);
    if (s.mean_improvement_simple) {
      std::cerr << " (simple slower than baseline in " << s.simple_worse_than_baseline
                << " batches)";
    }
    std::cerr << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"milq: batch scheduling of circuit jobs on QPU clusters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "milq 1.0.0");

  CutArgs cut;
  auto* cut_cmd = app.add_subcommand("cut", "Split oversized circuits into fitting jobs");
  cut_cmd->add_option("--circuits", cut.circuits, "Circuits JSON")->required();
  cut_cmd->add_option("--machines", cut.machines, "Machines JSON")->required();
  cut_cmd->add_option("--variants", cut.variants, "Variants per cut")->capture_default_str();
  cut_cmd->add_option("--job-cap", cut.job_cap, "Maximum jobs per circuit")
      ->capture_default_str();
  cut_cmd->add_option("--out", cut.out, "Jobs JSON output ('-' = stdout)")->capture_default_str();
  cut_cmd->add_option("--manifest", cut.manifest, "Cut manifest JSON output");

  InstanceArgs inst;
  auto* inst_cmd = app.add_subcommand("instance", "Build an instance with synthetic timing");
  inst_cmd->add_option("--jobs", inst.jobs, "Jobs JSON");
  inst_cmd->add_option("--machines", inst.machines, "Machines JSON");
  inst_cmd->add_flag("--example", inst.example, "Emit the built-in 9-job example instance");
  inst_cmd->add_option("--seed", inst.seed, "Timing seed")->capture_default_str();
  inst_cmd->add_option("--mode", inst.mode, "int or real")->capture_default_str();
  inst_cmd->add_option("--t-max", inst.t_max, "Number of time slots");
  inst_cmd->add_option("--big-m", inst.big_m, "Big-M constant");
  inst_cmd->add_option("--granularity", inst.granularity, "Slot width")->capture_default_str();
  inst_cmd->add_option("--processing-scale", inst.timing.base_processing_scale)
      ->capture_default_str();
  inst_cmd->add_option("--variation", inst.timing.variation_fraction)->capture_default_str();
  inst_cmd->add_option("--setup-scale", inst.timing.setup_scale)->capture_default_str();
  inst_cmd->add_flag("--depth-multiplier", inst.timing.depth_multiplier);
  inst_cmd->add_option("--out", inst.out, "Instance JSON output")->capture_default_str();

  ScheduleArgs sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Schedule an instance");
  sched_cmd->add_option("--instance", sched.instance, "Instance JSON")->required();
  sched_cmd->add_option("--strategy", sched.strategy, "baseline|simple|extended|oracle|greedy")
      ->capture_default_str();
  sched_cmd->add_option("--gap", sched.gap, "Relative MIP gap")->capture_default_str();
  sched_cmd->add_option("--time-limit", sched.time_limit, "Solver time limit (s)")
      ->capture_default_str();
  sched_cmd->add_option("--solver-cmd", sched.solver_cmd, "Solver command template");
  sched_cmd->add_option("--emit-lp", sched.emit_lp, "Write the LP model and exit");
  sched_cmd->add_option("--gantt", sched.gantt, "Write an SVG Gantt chart");
  sched_cmd->add_option("--out", sched.out, "Schedule JSON output")->capture_default_str();
  sched_cmd->add_option("--oracle-limit", sched.oracle_limit, "Oracle size limit")
      ->capture_default_str();
  sched_cmd->add_flag("--no-warm-start", sched.no_warm_start, "Do not pass a MIP start");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run benchmark scenarios");
  bench_cmd->add_option("--scenario", bench.scenarios, "Built-in name or scenario JSON")
      ->capture_default_str();
  bench_cmd->add_option("--strategies", bench.strategies, "Comma-separated strategies")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Override the scenario seed");
  bench_cmd->add_option("--mode", bench.mode, "Override timing mode (int|real)");
  bench_cmd->add_option("--batches", bench.batches, "Override the batch count");
  bench_cmd->add_option("--csv", bench.csv, "CSV output")->capture_default_str();
  bench_cmd->add_option("--json", bench.json, "JSON report output");
  bench_cmd->add_option("--gantt", bench.gantt_dir, "Directory for per-batch SVG charts");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--gap", bench.gap, "Relative MIP gap")->capture_default_str();
  bench_cmd->add_option("--time-limit", bench.time_limit, "Solver time limit per run (s)")
      ->capture_default_str();
  bench_cmd->add_option("--solver-cmd", bench.solver_cmd, "Solver command template");
  bench_cmd->add_option("--oracle-limit", bench.oracle_limit, "Oracle size limit")
      ->capture_default_str();
  bench_cmd->add_flag("--no-wall-time", bench.no_wall_time, "Leave the wall-time column empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cut_cmd) return cmd_cut(cut);
    if (*inst_cmd) {
      if (!inst.example && (inst.jobs.empty() || inst.machines.empty())) {
        throw InputError("instance needs --jobs and --machines, or --example");
      }
      return cmd_instance(inst);
    }
    if (*sched_cmd) return cmd_schedule(sched);
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const SolverUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoSolver;
  } catch (const SolverFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
