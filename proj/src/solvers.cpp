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

#include "milq/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "milq/errors.hpp"

namespace milq {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::baseline:
      return "baseline";
    case Strategy::simple:
      return "simple";
    case Strategy::extended:
      return "extended";
    case Strategy::oracle:
      return "oracle";
    case Strategy::greedy:
      return "greedy";
  }
  return "baseline";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  for (auto s : {Strategy::baseline, Strategy::simple, Strategy::extended, Strategy::oracle,
                 Strategy::greedy}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr Time kInf = std::numeric_limits<Time>::infinity();

std::vector<std::vector<std::size_t>> fitting_machines(const Instance& instance) {
  std::vector<std::vector<std::size_t>> fits(instance.jobs.size());
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    for (std::size_t m = 0; m < instance.machines.size(); ++m) {
      if (instance.jobs[j].qubits <= instance.machines[m].capacity) fits[j].push_back(m);
    }
    if (fits[j].empty()) throw InputError("job " + instance.jobs[j].id + " fits no machine");
  }
  return fits;
}

// Start candidates on machine m: 0 and every completion already there.
std::vector<Time> start_candidates(std::span<const ScheduleEntry> entries, std::size_t m) {
  std::vector<Time> out{0.0};
  for (const auto& e : entries) {
    if (e.machine == m) out.push_back(e.completion);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Oracle candidates: the plain events plus starts that align the job's
// completion with an existing start or completion, or place it one quantum
// after a completion. The last kind reaches schedules where a job must outlast
// another to become the sole predecessor of a later job.
std::vector<Time> aligned_candidates(std::span<const ScheduleEntry> entries, std::size_t job,
                                     std::size_t m, const Instance& instance) {
  std::vector<Time> out = start_candidates(entries, m);
  std::vector<Time> durations{instance.timing.processing(job, m) +
                              instance.timing.setup(kDummy, job, m)};
  for (const auto& e : entries) {
    if (e.machine == m) {
      durations.push_back(instance.timing.processing(job, m) +
                          instance.timing.setup(pred_of(e.job), job, m));
    }
  }
  const Time g = instance.granularity;
  for (const auto& e : entries) {
    if (e.machine != m) continue;
    for (Time d : durations) {
      for (Time t : {e.completion - d, e.completion + g - d, e.start - d}) {
        if (t >= 0) out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Evaluates placements; nullopt when the evaluation does not converge or the
// result overloads a machine.
std::optional<Schedule> try_evaluate(std::span<const Placement> placements,
                                     const Instance& instance) {
  try {
    Schedule s = evaluate_schedule(placements, instance, SetupMode::sequence_dependent);
    if (!capacity_feasible(s.entries, instance)) return std::nullopt;
    return s;
  } catch (const EvaluationError&) {
    return std::nullopt;
  }
}

// Stable job order for deterministic output.
Schedule sorted_by_job(Schedule s) {
  std::sort(s.entries.begin(), s.entries.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) { return a.job < b.job; });
  return s;
}

}  // namespace

bool capacity_feasible(std::span<const ScheduleEntry> entries, const Instance& instance) {
  std::vector<std::pair<Time, int>> events;
  for (std::size_t m = 0; m < instance.machines.size(); ++m) {
    events.clear();
    for (const auto& e : entries) {
      if (e.machine != m) continue;
      const int q = instance.jobs[e.job].qubits;
      events.emplace_back(e.start, q);
      events.emplace_back(e.completion, -q);
    }
    std::sort(events.begin(), events.end());
    int usage = 0;
    for (const auto& [t, d] : events) {
      usage += d;
      if (usage > instance.machines[m].capacity) return false;
    }
  }
  return true;
}

Packing ffd_pack(const Instance& instance) {
  const std::size_t nm = instance.machines.size();
  (void)fitting_machines(instance);
  std::vector<std::size_t> order(instance.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ja = instance.jobs[a];
    const auto& jb = instance.jobs[b];
    if (ja.qubits != jb.qubits) return ja.qubits > jb.qubits;
    return ja.id < jb.id;
  });

  Packing packing;
  auto place = [&](std::size_t job) {
    const int q = instance.jobs[job].qubits;
    for (auto& bin : packing.bins) {
      if (bin.closed || bin.remaining < q) continue;
      bin.contents.push_back(job);
      bin.remaining -= q;
      if (bin.remaining == 0) bin.closed = true;
      return true;
    }
    return false;
  };
  for (std::size_t job : order) {
    if (place(job)) continue;
    for (std::size_t m = 0; m < nm; ++m) {
      packing.bins.push_back({m, packing.generations, instance.machines[m].capacity, {}, false});
    }
    ++packing.generations;
    place(job);
  }
  return packing;
}

Schedule schedule_packing(const Packing& packing, const Instance& instance) {
  const std::size_t nm = instance.machines.size();
  std::vector<Placement> placements;
  std::vector<Time> ready(nm, 0.0);
  Schedule current;
  for (int g = 0; g < packing.generations; ++g) {
    for (std::size_t m = 0; m < nm; ++m) {
      for (std::size_t job : packing.bin(g, m, nm).contents) {
        placements.push_back({job, m, ready[m]});
      }
    }
    current = evaluate_schedule(placements, instance, SetupMode::sequence_dependent);
    for (std::size_t m = 0; m < nm; ++m) {
      if (packing.bin(g, m, nm).contents.empty()) continue;
      for (const auto& e : current.entries) {
        if (e.machine == m) ready[m] = std::max(ready[m], e.completion);
      }
    }
  }
  return sorted_by_job(std::move(current));
}

SolveResult solve_baseline(const Instance& instance) {
  auto start = Clock::now();
  SolveResult result;
  result.strategy = Strategy::baseline;
  result.schedule = schedule_packing(ffd_pack(instance), instance);
  result.wall_time = seconds_since(start);
  return result;
}

SolveResult solve_milp(const Instance& instance, ModelMode mode, const SolverOptions& options,
                       bool warm_start) {
  auto clock = Clock::now();
  if (!resolve_solver_command(options.command)) {
    throw SolverUnavailable(std::string("no solver configured (pass --solver-cmd or set ") +
                            kSolverEnv + ")");
  }
  MilpModel model = mode == ModelMode::extended
                        ? build_extended(instance)
                        : build_simple(instance, aggregate_setup_max(instance.timing));

  std::vector<double> start_values;
  const std::vector<double>* start = nullptr;
  if (warm_start) {
    // Both heuristics, timed the way the model times them; the shorter
    // one that satisfies every row becomes the incumbent hint.
    const SetupMode eval_mode =
        mode == ModelMode::extended ? SetupMode::sequence_dependent : SetupMode::job_only;
    std::vector<Schedule> hints;
    hints.push_back(evaluate_schedule(solve_baseline(instance).schedule.placements(), instance,
                                      eval_mode));
    hints.push_back(evaluate_schedule(solve_greedy(instance).schedule.placements(), instance,
                                      eval_mode));
    std::stable_sort(hints.begin(), hints.end(), [](const Schedule& a, const Schedule& b) {
      return a.makespan < b.makespan;
    });
    for (const auto& hint : hints) {
      try {
        auto values = assignment_from_schedule(model, instance, hint);
        if (check_assignment(model, values).empty()) {
          start_values = std::move(values);
          start = &start_values;
          break;
        }
      } catch (const Error&) {
        // Not representable on the slot grid.
      }
    }
  }

  MilpSolution solution = run_solver(model, options, start);
  if (solution.status == SolveStatus::infeasible) {
    throw SolverFailure("model infeasible; raise t_max (currently " +
                        std::to_string(instance.t_max) + ") or big_m");
  }
  if (!solution.has_incumbent) {
    throw SolverFailure("solver stopped (" + std::string(to_string(solution.status)) +
                        ") without a feasible solution; raise the time limit or t_max");
  }
  Schedule schedule = extract_schedule(solution, model, instance);
  if (mode == ModelMode::simple) {
    auto placements = schedule.placements();
    schedule = evaluate_schedule(placements, instance, SetupMode::sequence_dependent);
  }

  SolveResult result;
  result.strategy = mode == ModelMode::extended ? Strategy::extended : Strategy::simple;
  result.schedule = sorted_by_job(std::move(schedule));
  result.solver_status = solution.status;
  result.objective = solution.objective * instance.granularity;
  result.wall_time = seconds_since(clock);
  return result;
}

namespace {

class PermutationSearch {
 public:
  explicit PermutationSearch(const Instance& instance)
      : instance_(instance), n_(instance.jobs.size()) {}

  void run(const std::vector<std::size_t>& assignment) {
    assignment_ = &assignment;
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    do {
      order_ = &order;
      placed_.clear();
      dfs(0, {});
    } while (std::next_permutation(order.begin(), order.end()));
  }

  Time best = kInf;
  Schedule best_schedule;

 private:
  void dfs(std::size_t depth, const Schedule& current) {
    if (depth == n_) {
      if (current.makespan < best) {
        best = current.makespan;
        best_schedule = current;
      }
      return;
    }
    const std::size_t job = (*order_)[depth];
    const std::size_t m = (*assignment_)[job];
    for (Time t : aligned_candidates(current.entries, job, m, instance_)) {
      placed_.push_back({job, m, t});
      if (auto next = try_evaluate(placed_, instance_)) dfs(depth + 1, *next);
      placed_.pop_back();
    }
  }

  const Instance& instance_;
  std::size_t n_;
  const std::vector<std::size_t>* assignment_ = nullptr;
  const std::vector<std::size_t>* order_ = nullptr;
  std::vector<Placement> placed_;
};

// Start-time grid over {0, g, 2g, ..., t_max * g}. Searches for schedules no
// worse than `bound`; partial assignments are pruned with lower-bound
// intervals [b, b + p + min setup).
class GridSearch {
 public:
  GridSearch(const Instance& instance, const std::vector<std::vector<std::size_t>>& fits,
             Time bound)
      : instance_(instance), fits_(fits), n_(instance.jobs.size()) {
    best = bound;
    const std::size_t nm = instance.machines.size();
    min_duration_.assign(n_ * nm, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm; ++m) {
        Time s = instance.timing.setup(kDummy, j, m);
        for (std::size_t i = 0; i < n_; ++i) {
          if (i != j) s = std::min(s, instance.timing.setup(pred_of(i), j, m));
        }
        min_duration_[j * nm + m] = instance.timing.processing(j, m) + s;
      }
    }
  }

  void run() { dfs(0); }

  Time best;
  std::optional<Schedule> best_schedule;

 private:
  void dfs(std::size_t j) {
    if (j == n_) {
      auto s = try_evaluate(placed_, instance_);
      if (s && s->makespan <= best && s->makespan <= instance_.horizon()) {
        if (!best_schedule || s->makespan < best) {
          best = s->makespan;
          best_schedule = *s;
        }
      }
      return;
    }
    const std::size_t nm = instance_.machines.size();
    for (std::size_t m : fits_[j]) {
      const Time d = min_duration_[j * nm + m];
      for (int k = 0; k <= instance_.t_max; ++k) {
        const Time b = k * instance_.granularity;
        if (b + d > best || b + d > instance_.horizon()) break;
        lower_.push_back({j, m, b, b + d});
        if (capacity_feasible(lower_, instance_)) {
          placed_.push_back({j, m, b});
          dfs(j + 1);
          placed_.pop_back();
        }
        lower_.pop_back();
      }
    }
  }

  const Instance& instance_;
  const std::vector<std::vector<std::size_t>>& fits_;
  std::size_t n_;
  std::vector<Time> min_duration_;
  std::vector<Placement> placed_;
  std::vector<ScheduleEntry> lower_;
};

}  // namespace

SolveResult solve_oracle(const Instance& instance, std::size_t limit, OracleReport* report,
                         std::size_t grid_limit) {
  auto clock = Clock::now();
  const std::size_t n = instance.jobs.size();
  if (n > limit) {
    throw InputError("instance too large for the oracle: " + std::to_string(n) +
                     " jobs, limit " + std::to_string(limit));
  }
  auto fits = fitting_machines(instance);
  SolveResult result;
  result.strategy = Strategy::oracle;
  OracleReport local;

  PermutationSearch perm(instance);
  std::vector<std::size_t> pick(n, 0), assignment(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) assignment[j] = fits[j][pick[j]];
    perm.run(assignment);
    std::size_t j = 0;
    while (j < n && ++pick[j] == fits[j].size()) pick[j++] = 0;
    if (j == n) break;
  }
  local.permutation_makespan = perm.best;
  Schedule best = perm.best_schedule;

  if (n <= grid_limit && instance.integer_times()) {
    GridSearch grid(instance, fits, perm.best);
    grid.run();
    if (grid.best_schedule) {
      local.grid_makespan = grid.best;
      if (grid.best < perm.best) best = *grid.best_schedule;
    }
    // The grid misses the permutation optimum only if that lies past the
    // horizon, in which case both methods are not comparable.
    local.agree = !grid.best_schedule || grid.best == perm.best;
    if (!grid.best_schedule && perm.best <= instance.horizon()) local.agree = false;
  }
  if (report != nullptr) *report = local;
  result.schedule = sorted_by_job(std::move(best));
  result.wall_time = seconds_since(clock);
  return result;
}

SolveResult solve_greedy(const Instance& instance) {
  auto clock = Clock::now();
  const std::size_t n = instance.jobs.size();
  auto fits = fitting_machines(instance);
  auto key = [&](std::size_t j) {
    Time p = kInf;
    for (std::size_t m : fits[j]) p = std::min(p, instance.timing.processing(j, m));
    return p;
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Time ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    return instance.jobs[a].id < instance.jobs[b].id;
  });

  std::vector<Placement> placed;
  Schedule current;
  for (std::size_t job : order) {
    std::optional<Schedule> chosen;
    Placement chosen_p{};
    for (std::size_t m : fits[job]) {
      for (Time t : start_candidates(current.entries, m)) {
        placed.push_back({job, m, t});
        auto s = try_evaluate(placed, instance);
        placed.pop_back();
        if (!s) continue;
        if (!chosen || s->makespan < chosen->makespan) {
          chosen = std::move(s);
          chosen_p = {job, m, t};
        }
        break;  // earliest feasible start on this machine
      }
    }
    if (!chosen) {
      // Unreachable: a start after every completion on a fitting machine never
      // overlaps and leaves earlier jobs unchanged.
      throw EvaluationError("greedy found no feasible start for job " + instance.jobs[job].id);
    }
    placed.push_back(chosen_p);
    current = std::move(*chosen);
  }
  SolveResult result;
  result.strategy = Strategy::greedy;
  result.schedule = sorted_by_job(std::move(current));
  result.wall_time = seconds_since(clock);
  return result;
}

}  // namespace milq
