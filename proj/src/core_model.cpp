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

#include "milq/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "milq/errors.hpp"

namespace milq {

TimingTables::TimingTables(std::size_t num_jobs, std::size_t num_machines)
    : jobs_(num_jobs),
      machines_(num_machines),
      processing_(num_jobs * num_machines, std::numeric_limits<Time>::quiet_NaN()),
      setup_((num_jobs + 1) * num_jobs * num_machines, std::numeric_limits<Time>::quiet_NaN()) {}

std::optional<std::size_t> Instance::job_index(const std::string& id) const {
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j].id == id) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> Instance::machine_index(const std::string& id) const {
  for (std::size_t m = 0; m < machines.size(); ++m) {
    if (machines[m].id == id) return m;
  }
  return std::nullopt;
}

int Instance::max_capacity() const {
  int best = 0;
  for (const auto& m : machines) best = std::max(best, m.capacity);
  return best;
}

bool Instance::integer_times() const {
  auto integral = [](Time t) { return std::isfinite(t) && std::floor(t) == t; };
  if (granularity != 1.0) return false;
  for (std::size_t j = 0; j < timing.num_jobs(); ++j) {
    for (std::size_t m = 0; m < timing.num_machines(); ++m) {
      if (!integral(timing.processing(j, m))) return false;
      for (PredIndex i = 0; i <= timing.num_jobs(); ++i) {
        if (i == pred_of(j)) continue;
        if (!integral(timing.setup(i, j, m))) return false;
      }
    }
  }
  return true;
}

int t_max_lower_bound(const Instance& instance) {
  const auto& t = instance.timing;
  if (instance.machines.empty() || instance.granularity <= 0) return 0;
  double total = 0;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < instance.machines.size(); ++m) {
      double min_setup = std::numeric_limits<double>::infinity();
      for (PredIndex i = 0; i <= instance.jobs.size(); ++i) {
        if (i != pred_of(j)) min_setup = std::min(min_setup, t.setup(i, j, m));
      }
      best = std::min(best, t.processing(j, m) + min_setup);
    }
    total += best;
  }
  double slots = total / (instance.granularity * static_cast<double>(instance.machines.size()));
  return static_cast<int>(std::ceil(slots - 1e-9));
}

std::vector<Placement> Schedule::placements() const {
  std::vector<Placement> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({e.job, e.machine, e.start});
  return out;
}

std::vector<PredIndex> SuccessorMap::predecessors_of(std::size_t job) const {
  std::vector<PredIndex> out;
  for (const auto& s : relation) {
    if (s.job == job) out.push_back(s.pred);
  }
  return out;
}

std::string format_time(Time t) {
  if (t == 0) t = 0;  // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> out;
  const std::size_t n = instance.jobs.size();
  const std::size_t nm = instance.machines.size();

  if (nm == 0) out.push_back("instance has no machines");

  std::set<std::string> seen;
  for (const auto& job : instance.jobs) {
    if (job.id.empty()) out.push_back("job with empty id");
    if (job.id == "0") out.push_back("job id 0 is reserved for the dummy job");
    if (!seen.insert(job.id).second) out.push_back("duplicate job id " + job.id);
    if (job.qubits < 1) out.push_back("job " + job.id + " qubits must be >= 1");
    if (job.depth < 1) out.push_back("job " + job.id + " depth must be >= 1");
  }
  seen.clear();
  for (const auto& m : instance.machines) {
    if (m.id.empty()) out.push_back("machine with empty id");
    if (!seen.insert(m.id).second) out.push_back("duplicate machine id " + m.id);
    if (m.capacity < 1) out.push_back("machine " + m.id + " capacity must be >= 1");
  }
  const int cap = instance.max_capacity();
  for (const auto& job : instance.jobs) {
    if (nm > 0 && job.qubits > cap) out.push_back("job " + job.id + " fits no machine");
  }

  const auto& t = instance.timing;
  bool shape_ok = t.num_jobs() == n && t.num_machines() == nm;
  if (!shape_ok) {
    out.push_back("timing tables do not match jobs x machines");
  } else {
    bool proc_missing = false, proc_negative = false;
    bool setup_missing = false, setup_negative = false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < nm; ++m) {
        Time p = t.processing(j, m);
        if (std::isnan(p)) proc_missing = true;
        else if (p < 0 || !std::isfinite(p)) proc_negative = true;
        for (PredIndex i = 0; i <= n; ++i) {
          if (i == pred_of(j)) continue;  // s_jjm is never read
          Time s = t.setup(i, j, m);
          if (std::isnan(s)) setup_missing = true;
          else if (s < 0 || !std::isfinite(s)) setup_negative = true;
        }
      }
    }
    if (proc_missing) out.push_back("processing table incomplete");
    if (proc_negative) out.push_back("processing times must be finite and >= 0");
    if (setup_missing) out.push_back("setup table incomplete");
    if (setup_negative) out.push_back("setup times must be finite and >= 0");
  }

  if (!(instance.granularity > 0)) out.push_back("granularity must be > 0");
  if (instance.t_max < 1) out.push_back("t_max must be >= 1");
  if (!(instance.big_m > instance.t_max + 1.0)) {
    out.push_back("big_m must exceed t_max + 1 (largest completion in slots)");
  }
  if (shape_ok && out.empty()) {
    int lb = t_max_lower_bound(instance);
    if (instance.t_max < lb) {
      out.push_back("t_max " + std::to_string(instance.t_max) + " below lower bound " +
                    std::to_string(lb));
    }
  }
  return out;
}

std::vector<std::string> validate_schedule(const Schedule& schedule, const Instance& instance) {
  std::vector<std::string> out;
  const std::size_t n = instance.jobs.size();
  const std::size_t nm = instance.machines.size();
  std::vector<int> count(n, 0);
  bool indices_ok = true;
  Time latest = 0;
  for (const auto& e : schedule.entries) {
    if (e.job >= n || e.machine >= nm) {
      out.push_back("entry references unknown job or machine");
      indices_ok = false;
      continue;
    }
    const auto& job = instance.jobs[e.job];
    const auto& machine = instance.machines[e.machine];
    ++count[e.job];
    latest = std::max(latest, e.completion);
    if (job.qubits > machine.capacity) {
      out.push_back("job " + job.id + " does not fit " + machine.id);
    }
    if (!(e.completion > e.start)) {
      out.push_back("job " + job.id + " completion must exceed start");
    }
    if (e.start < 0 || e.completion > instance.horizon()) {
      out.push_back("job " + job.id + " outside horizon [0, " + format_time(instance.horizon()) +
                    "]");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (count[j] == 0) out.push_back("job " + instance.jobs[j].id + " missing from schedule");
    if (count[j] > 1) out.push_back("job " + instance.jobs[j].id + " scheduled more than once");
  }
  if (!indices_ok) return out;

  // Sweep each machine's interval events; ends sort before starts at equal
  // times because occupation is half-open.
  for (std::size_t m = 0; m < nm; ++m) {
    std::vector<std::pair<Time, int>> events;
    for (const auto& e : schedule.entries) {
      if (e.machine != m) continue;
      int q = instance.jobs[e.job].qubits;
      events.emplace_back(e.start, q);
      events.emplace_back(e.completion, -q);
    }
    std::sort(events.begin(), events.end());
    int usage = 0;
    for (const auto& [time, delta] : events) {
      usage += delta;
      if (usage > instance.machines[m].capacity) {
        out.push_back("capacity exceeded on " + instance.machines[m].id + " at t=" +
                      format_time(time));
        break;
      }
    }
  }
  if (!schedule.entries.empty() && schedule.makespan != latest) {
    out.push_back("makespan " + format_time(schedule.makespan) +
                  " does not match latest completion " + format_time(latest));
  }
  return out;
}

namespace {

struct MachineLists {
  std::vector<std::vector<std::size_t>> by_machine;  // positions into entries
};

MachineLists group_by_machine(std::span<const ScheduleEntry> entries, std::size_t machines) {
  MachineLists lists;
  lists.by_machine.resize(machines);
  for (std::size_t pos = 0; pos < entries.size(); ++pos) {
    lists.by_machine[entries[pos].machine].push_back(pos);
  }
  return lists;
}

// Latest completion at or before entries[pos].start among the other entries
// on the same machine, if any.
std::optional<Time> layer_time(std::span<const ScheduleEntry> entries,
                               const std::vector<std::size_t>& same_machine, std::size_t pos) {
  std::optional<Time> best;
  const Time start = entries[pos].start;
  for (std::size_t other : same_machine) {
    if (other == pos) continue;
    Time c = entries[other].completion;
    if (c <= start && (!best || c > *best)) best = c;
  }
  return best;
}

}  // namespace

SuccessorMap derive_successors(const Schedule& schedule, const Instance& instance) {
  const std::size_t n = instance.jobs.size();
  const std::size_t nm = instance.machines.size();
  for (const auto& e : schedule.entries) {
    if (e.job >= n || e.machine >= nm) {
      throw InputError("schedule entry references unknown job or machine");
    }
  }
  const auto& entries = schedule.entries;
  auto lists = group_by_machine(entries, nm);
  SuccessorMap map;
  for (std::size_t pos = 0; pos < entries.size(); ++pos) {
    const auto& e = entries[pos];
    const auto& same = lists.by_machine[e.machine];
    auto layer = layer_time(entries, same, pos);
    if (!layer) {
      map.relation.push_back({kDummy, e.job, e.machine});
      continue;
    }
    for (std::size_t other : same) {
      if (other != pos && entries[other].completion == *layer) {
        map.relation.push_back({pred_of(entries[other].job), e.job, e.machine});
      }
    }
  }
  std::sort(map.relation.begin(), map.relation.end());
  return map;
}

JobSetupTable aggregate_setup_max(const TimingTables& timing) {
  const std::size_t n = timing.num_jobs();
  const std::size_t nm = timing.num_machines();
  JobSetupTable out(n, nm);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < nm; ++m) {
      Time best = timing.setup(kDummy, j, m);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j) best = std::max(best, timing.setup(pred_of(i), j, m));
      }
      out(j, m) = best;
    }
  }
  return out;
}

Evaluation evaluate(std::span<const Placement> placements, const Instance& instance,
                    SetupMode mode, const JobSetupTable* job_setup) {
  const std::size_t n = instance.jobs.size();
  const std::size_t nm = instance.machines.size();
  const auto& timing = instance.timing;

  JobSetupTable aggregated;
  if (mode == SetupMode::job_only && job_setup == nullptr) {
    aggregated = aggregate_setup_max(timing);
    job_setup = &aggregated;
  }

  std::vector<ScheduleEntry> entries;
  entries.reserve(placements.size());
  for (const auto& p : placements) {
    if (p.job >= n || p.machine >= nm) {
      throw InputError("placement references unknown job or machine");
    }
    entries.push_back({p.job, p.machine, p.start, p.start});
  }

  auto setup_for = [&](std::size_t pos, const std::vector<std::size_t>& same) -> Time {
    const auto& e = entries[pos];
    if (mode == SetupMode::job_only) return (*job_setup)(e.job, e.machine);
    auto layer = layer_time(entries, same, pos);
    if (!layer) return timing.setup(kDummy, e.job, e.machine);
    Time best = 0;
    for (std::size_t other : same) {
      if (other != pos && entries[other].completion == *layer) {
        best = std::max(best, timing.setup(pred_of(entries[other].job), e.job, e.machine));
      }
    }
    return best;
  };

  // Seed with dummy-predecessor setups, then sweep in start order.
  for (auto& e : entries) {
    Time s = mode == SetupMode::job_only ? (*job_setup)(e.job, e.machine)
                                         : timing.setup(kDummy, e.job, e.machine);
    e.completion = e.start + timing.processing(e.job, e.machine) + s;
  }
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].start < entries[b].start;
  });
  auto lists = group_by_machine(entries, nm);

  Evaluation result;
  const int limit = std::max<int>(1, static_cast<int>(entries.size()));
  while (true) {
    bool changed = false;
    for (std::size_t pos : order) {
      auto& e = entries[pos];
      Time c = e.start + timing.processing(e.job, e.machine) +
               setup_for(pos, lists.by_machine[e.machine]);
      if (c != e.completion) {
        e.completion = c;
        changed = true;
      }
    }
    if (!changed) break;
    if (++result.iterations > limit) {
      throw EvaluationError("schedule evaluation did not converge within " +
                            std::to_string(limit) +
                            " iterations (cyclic timing dependency); infeasible evaluation");
    }
  }

  result.schedule.entries = std::move(entries);
  for (const auto& e : result.schedule.entries) {
    result.schedule.makespan = std::max(result.schedule.makespan, e.completion);
  }
  return result;
}

Schedule evaluate_schedule(std::span<const Placement> placements, const Instance& instance,
                           SetupMode mode, const JobSetupTable* job_setup) {
  return evaluate(placements, instance, mode, job_setup).schedule;
}

}  // namespace milq
