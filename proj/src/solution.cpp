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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "milq/errors.hpp"
#include "milq/milp.hpp"

namespace milq {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::gap_terminated:
      return "gap_terminated";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::timeout:
      return "timeout";
  }
  return "infeasible";
}

std::optional<SolveStatus> parse_status(std::string_view text) {
  for (auto s : {SolveStatus::optimal, SolveStatus::gap_terminated, SolveStatus::infeasible,
                 SolveStatus::timeout}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0;
  // from_chars rejects a leading '+'.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    if (text == "inf" || text == "Infinity") return INFINITY;
    if (text == "-inf" || text == "-Infinity") return -INFINITY;
    throw InputError("solution: bad number '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

}  // namespace

MilpSolution parse_solution(std::string_view text, const MilpModel& model) {
  if (trim(text).empty()) throw InputError("solution file is empty");
  MilpSolution sol;
  sol.values.assign(model.variables.size(), 0.0);
  const auto index = model.name_index();
  std::optional<SolveStatus> status;
  std::optional<double> objective;
  std::vector<std::string> unknown;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    std::size_t space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw InputError("solution: malformed line '" + std::string(line) + "'");
    }
    std::string_view key = line.substr(0, space);
    std::string_view value = trim(line.substr(space));
    if (key == "status") {
      status = parse_status(value);
      if (!status) throw InputError("solution: unknown status '" + std::string(value) + "'");
    } else if (key == "objective") {
      objective = parse_number(value, key);
    } else if (key == "gap") {
      sol.reported_gap = parse_number(value, key);
    } else {
      auto it = index.find(std::string(key));
      if (it == index.end()) {
        unknown.emplace_back(key);
        continue;
      }
      sol.values[it->second] = parse_number(value, key);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "solution references unknown variables:";
    for (std::size_t i = 0; i < unknown.size() && i < 10; ++i) msg += " " + unknown[i];
    if (unknown.size() > 10) msg += " (+" + std::to_string(unknown.size() - 10) + " more)";
    throw InputError(msg);
  }
  if (!status) throw InputError("solution: missing status line");
  sol.status = *status;
  const bool needs_objective =
      sol.status == SolveStatus::optimal || sol.status == SolveStatus::gap_terminated;
  if (!objective && needs_objective) throw InputError("solution: missing objective line");
  if (objective) {
    sol.objective = *objective;
    sol.has_incumbent = std::isfinite(*objective);
  }
  if (sol.status == SolveStatus::optimal) sol.reported_gap = 0.0;
  return sol;
}

std::string format_assignment(const MilpModel& model, const std::vector<double>& values) {
  std::string out;
  for (std::size_t v = 0; v < values.size() && v < model.variables.size(); ++v) {
    if (values[v] == 0.0) continue;
    out += model.variables[v].name;
    out += ' ';
    out += format_time(values[v]);
    out += '\n';
  }
  return out;
}

namespace {

// Constraint family responsible for a validation message.
std::string family_of(const std::string& violation) {
  if (violation.find("capacity") != std::string::npos) return "C11";
  if (violation.find("does not fit") != std::string::npos) return "C8/C11";
  if (violation.find("horizon") != std::string::npos) return "C9/C10";
  if (violation.find("makespan") != std::string::npos) return "C1";
  return "C3/C4";
}

JobSetupTable slot_job_setup(const MilpModel& model) {
  const std::size_t n = model.space.jobs();
  const std::size_t nm = model.space.machines();
  JobSetupTable table(n, nm);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < nm; ++m) table(j, m) = model.job_setup_slots[j * nm + m];
  }
  return table;
}

Instance slot_instance(const MilpModel& model, const Instance& instance) {
  const std::size_t n = model.space.jobs();
  const std::size_t nm = model.space.machines();
  Instance slots = instance;
  slots.granularity = 1.0;
  slots.timing = TimingTables(n, nm);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < nm; ++m) {
      slots.timing.processing(j, m) = model.processing_slots[j * nm + m];
      for (PredIndex i = 0; i <= n; ++i) {
        slots.timing.setup(i, j, m) =
            model.setup_slots.empty() ? 0.0 : model.setup_slots[(i * n + j) * nm + m];
      }
    }
  }
  return slots;
}

}  // namespace

Schedule extract_schedule(const MilpSolution& solution, const MilpModel& model,
                          const Instance& instance) {
  if (!solution.has_incumbent) {
    throw SolverFailure("solution (status " + std::string(to_string(solution.status)) +
                        ") carries no incumbent to extract");
  }
  const auto& s = model.space;
  const std::size_t n = s.jobs();
  const std::size_t nm = s.machines();
  if (n != instance.jobs.size() || nm != instance.machines.size()) {
    throw SolverFailure("model does not match the instance");
  }
  std::vector<Placement> placements;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::size_t> chosen;
    for (std::size_t m = 0; m < nm; ++m) {
      if (solution.values[s.x(j, m)] > 0.5) {
        if (chosen) {
          throw SolverFailure("C3: x ambiguous for job " + instance.jobs[j].id +
                              " (several machines)");
        }
        chosen = m;
      }
    }
    if (!chosen) {
      throw SolverFailure("C3: x ambiguous for job " + instance.jobs[j].id + " (no machine)");
    }
    double slot = std::round(solution.values[s.b(j)]);
    placements.push_back({j, *chosen, slot * model.granularity});
  }
  Schedule schedule;
  try {
    schedule = model.mode == ModelMode::extended
                   ? evaluate_schedule(placements, instance, SetupMode::sequence_dependent)
                   : evaluate_schedule(placements, instance, SetupMode::job_only);
  } catch (const EvaluationError& e) {
    throw SolverFailure(std::string("C5: ") + e.what());
  }
  auto violations = validate_schedule(schedule, instance);
  if (!violations.empty()) {
    throw SolverFailure("extracted schedule violates " + family_of(violations.front()) + ": " +
                        violations.front());
  }
  return schedule;
}

std::vector<double> assignment_from_schedule(const MilpModel& model, const Instance& instance,
                                             const Schedule& schedule) {
  const auto& s = model.space;
  const std::size_t n = s.jobs();
  if (schedule.entries.size() != n) {
    throw InputError("schedule must place every job exactly once");
  }
  Instance slots = slot_instance(model, instance);
  std::vector<Placement> placements;
  for (const auto& e : schedule.entries) {
    placements.push_back({e.job, e.machine, std::round(e.start / model.granularity)});
  }
  JobSetupTable job_setup;
  Schedule timed;
  if (model.mode == ModelMode::extended) {
    timed = evaluate_schedule(placements, slots, SetupMode::sequence_dependent);
  } else {
    job_setup = slot_job_setup(model);
    timed = evaluate_schedule(placements, slots, SetupMode::job_only, &job_setup);
  }

  std::vector<double> values(model.variables.size(), 0.0);
  std::vector<std::size_t> machine_of(n);
  std::vector<double> b(n), c(n);
  double cmax = 0;
  for (const auto& e : timed.entries) {
    machine_of[e.job] = e.machine;
    b[e.job] = e.start;
    c[e.job] = e.completion;
    values[s.x(e.job, e.machine)] = 1;
    values[s.b(e.job)] = e.start;
    values[s.c(e.job)] = e.completion;
    for (auto t = static_cast<std::size_t>(e.start);
         t < static_cast<std::size_t>(e.completion) && t < s.slots(); ++t) {
      values[s.z(e.job, e.machine, t)] = 1;
    }
    cmax = std::max(cmax, e.completion);
  }
  values[s.cmax()] = cmax;
  if (!s.extended()) return values;

  auto successors = derive_successors(timed, slots);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = machine_of[j];
    PredIndex binding = kDummy;
    double best = -1;
    for (PredIndex i : successors.predecessors_of(j)) {
      values[s.y(i, j, m)] = 1;
      double setup = slots.timing.setup(i, j, m);
      if (setup > best) {
        best = setup;
        binding = i;
      }
    }
    values[s.w(binding, j, m)] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      values[s.alpha(i, j)] = c[i] <= b[j] ? 1 : 0;
      values[s.beta(i, j)] = c[i] < c[j] ? 1 : 0;
      const bool same = machine_of[i] == machine_of[j];
      if (same) values[s.gamma(i, j, machine_of[i])] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || machine_of[i] != machine_of[j]) continue;
      const std::size_t m = machine_of[i];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || machine_of[k] != m) continue;
        if (c[k] <= b[j] && c[i] < c[k]) values[s.delta(i, j, k, m)] = 1;
      }
    }
  }
  return values;
}

std::vector<std::string> check_assignment(const MilpModel& model,
                                          const std::vector<double>& values, double tolerance) {
  std::vector<std::string> out;
  if (values.size() != model.variables.size()) {
    out.push_back("assignment size mismatch");
    return out;
  }
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto& var = model.variables[v];
    if (values[v] < var.lower - tolerance || values[v] > var.upper + tolerance) {
      out.push_back("bound " + var.name);
    }
    if (var.kind == VarKind::binary &&
        std::abs(values[v] - std::round(values[v])) > tolerance) {
      out.push_back("integrality " + var.name);
    }
  }
  for (const auto& c : model.constraints) {
    double lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    bool ok = true;
    const double slack = tolerance * std::max(1.0, std::abs(c.rhs));
    switch (c.sense) {
      case Sense::le:
        ok = lhs <= c.rhs + slack;
        break;
      case Sense::ge:
        ok = lhs >= c.rhs - slack;
        break;
      case Sense::eq:
        ok = std::abs(lhs - c.rhs) <= slack;
        break;
    }
    if (!ok) out.push_back(c.name);
  }
  return out;
}

}  // namespace milq
