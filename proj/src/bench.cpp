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

#include "milq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <thread>

#include <json.hpp>

#include "milq/cutter.hpp"
#include "milq/errors.hpp"
#include "milq/io.hpp"

namespace milq {

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "paper-two-qpu") {
    s.machines = {{"QPU1", 5}, {"QPU2", 5}};
  } else if (name == "paper-three-qpu") {
    s.machines = {{"QPU1", 5}, {"QPU2", 6}, {"QPU3", 20}};
  } else {
    throw InputError("unknown built-in scenario '" + name + "'");
  }
  s.batches = 10;
  s.batch_size = 7;
  s.timing.mode = TimeMode::integer;
  return s;
}

std::vector<std::string> builtin_scenario_names() { return {"paper-two-qpu", "paper-three-qpu"}; }

void check_scenario(const Scenario& s) {
  if (s.machines.empty()) throw InputError("scenario " + s.name + ": no machines");
  for (const auto& m : s.machines) {
    if (m.capacity < 1) throw InputError("scenario " + s.name + ": capacity must be >= 1");
  }
  if (s.batches < 1) throw InputError("scenario " + s.name + ": batches must be >= 1");
  if (s.batch_size < 1) throw InputError("scenario " + s.name + ": batch_size must be >= 1");
  if (s.min_width < 1) throw InputError("scenario " + s.name + ": min_width must be >= 1");
  if (s.min_depth < 1 || s.max_depth < s.min_depth) {
    throw InputError("scenario " + s.name + ": need 1 <= min_depth <= max_depth");
  }
  if (!(s.t_max_factor >= 1.0)) throw InputError("scenario " + s.name + ": t_max_factor < 1");
  if (!(s.granularity > 0.0)) throw InputError("scenario " + s.name + ": granularity <= 0");
  check_timing_config(s.timing);
}

std::uint64_t batch_seed(const Scenario& scenario, int batch) {
  return scenario.timing.seed + static_cast<std::uint64_t>(batch);
}

namespace {

int uniform_int(TimingStream& stream, int lo, int hi) {
  const double span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<int>(stream.uniform01() * span));
}

}  // namespace

void size_horizon(Instance& instance, double factor) {
  const Time makespan = solve_baseline(instance).schedule.makespan;
  int t_max = static_cast<int>(std::ceil(factor * makespan / instance.granularity - 1e-9));
  t_max = std::max({t_max, t_max_lower_bound(instance), 1});
  double total = 0;
  const auto& t = instance.timing;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    double worst = 0;
    for (std::size_t m = 0; m < instance.machines.size(); ++m) {
      double s = 0;
      for (PredIndex i = 0; i <= instance.jobs.size(); ++i) {
        if (i != pred_of(j)) s = std::max(s, t.setup(i, j, m));
      }
      worst = std::max(worst, t.processing(j, m) + s);
    }
    total += std::ceil(worst / instance.granularity - 1e-9);
  }
  instance.t_max = t_max;
  instance.big_m = t_max + total + 1;
}


Instance gen_batch(const Scenario& scenario, int batch) {
  check_scenario(scenario);
  const std::uint64_t seed = batch_seed(scenario, batch);
  TimingStream stream(seed, "batch");
  Instance instance;
  instance.machines = scenario.machines;
  instance.granularity = scenario.granularity;
  const int cap = instance.max_capacity();
  const int lo = std::min(scenario.min_width, cap);
  for (int k = 0; k < scenario.batch_size; ++k) {
    CircuitJob job;
    job.id = "J" + std::to_string(k + 1);
    job.qubits = uniform_int(stream, lo, cap);
    job.depth = uniform_int(stream, scenario.min_depth, scenario.max_depth);
    instance.jobs.push_back(std::move(job));
  }
  TimingConfig config = scenario.timing;
  config.seed = seed;
  instance.timing = synthesize_timing(instance.jobs, instance.machines, config);
  size_horizon(instance, scenario.t_max_factor);
  return instance;
}

Instance example_instance(std::uint64_t seed) {
  const std::vector<CircuitSpec> circuits{{"A", 7, 10}, {"B", 3, 10}};
  Instance instance;
  instance.machines = {{"M1", 5}, {"M2", 5}};
  instance.jobs = resize_batch(circuits, instance.machines, kDefaultVariantsPerCut).jobs;
  TimingConfig config;
  config.seed = seed;
  instance.timing = synthesize_timing(instance.jobs, instance.machines, config);
  instance.big_m = 1000;
  instance.t_max = 64;
  return instance;
}

namespace {

struct StrategyRun {
  BenchRow row;
  std::optional<Schedule> schedule;
};

StrategyRun run_strategy(const Instance& instance, Strategy strategy,
                         const BenchOptions& options) {
  StrategyRun run;
  BenchRow& row = run.row;
  row.strategy = strategy;
  try {
    SolveResult result;
    switch (strategy) {
      case Strategy::baseline:
        result = solve_baseline(instance);
        break;
      case Strategy::greedy:
        result = solve_greedy(instance);
        break;
      case Strategy::oracle:
        if (instance.jobs.size() > options.oracle_limit) {
          row.status = "skipped";
          row.message = "instance too large for the oracle";
          return run;
        }
        result = solve_oracle(instance, options.oracle_limit);
        break;
      case Strategy::simple:
        result = solve_milp(instance, ModelMode::simple, options.solver);
        break;
      case Strategy::extended:
        result = solve_milp(instance, ModelMode::extended, options.solver);
        break;
    }
    row.makespan = result.schedule.makespan;
    row.status = result.solver_status ? std::string(to_string(*result.solver_status)) : "ok";
    row.wall_time = result.wall_time;
    run.schedule = std::move(result.schedule);
  } catch (const SolverUnavailable& e) {
    row.status = "unavailable";
    row.message = e.what();
  } catch (const Error& e) {
    row.status = "failed";
    row.message = e.what();
  }
  return run;
}

std::optional<double> mean(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

BenchReport run_scenarios(std::span<const Scenario> scenarios, const BenchOptions& options) {
  struct Task {
    std::size_t scenario;
    int batch;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    check_scenario(scenarios[s]);
    for (int b = 0; b < scenarios[s].batches; ++b) tasks.push_back({s, b});
  }
  std::vector<std::vector<BenchRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto& scenario = scenarios[tasks[k].scenario];
      const int batch = tasks[k].batch;
      Instance instance = gen_batch(scenario, batch);
      for (Strategy strategy : options.strategies) {
        StrategyRun run = run_strategy(instance, strategy, options);
        BenchRow& row = run.row;
        row.scenario = scenario.name;
        row.batch = batch;
        row.seed = batch_seed(scenario, batch);
        if (!options.gantt_dir.empty() && run.schedule) {
          auto path = std::filesystem::path(options.gantt_dir) /
                      (scenario.name + "_b" + std::to_string(batch) + "_" +
                       std::string(to_string(strategy)) + ".svg");
          write_file_atomic(path.string(), render_gantt(*run.schedule, instance));
        }
        results[k].push_back(std::move(row));
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(options.workers, tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchReport report;
  for (auto& rows : results) {
    for (auto& row : rows) report.rows.push_back(std::move(row));
  }
  for (const auto& scenario : scenarios) {
    ScenarioSummary summary;
    summary.scenario = scenario.name;
    std::map<int, Time> baseline;
    for (const auto& row : report.rows) {
      if (row.scenario == scenario.name && row.strategy == Strategy::baseline && row.makespan) {
        baseline[row.batch] = *row.makespan;
      }
    }
    std::vector<double> simple, extended, greedy;
    for (const auto& row : report.rows) {
      if (row.scenario != scenario.name || !row.makespan) continue;
      auto it = baseline.find(row.batch);
      if (it == baseline.end() || it->second <= 0) continue;
      const double gain = (it->second - *row.makespan) / it->second;
      if (row.strategy == Strategy::simple) {
        simple.push_back(gain);
        if (*row.makespan > it->second) ++summary.simple_worse_than_baseline;
      } else if (row.strategy == Strategy::extended) {
        extended.push_back(gain);
      } else if (row.strategy == Strategy::greedy) {
        greedy.push_back(gain);
      }
    }
    summary.mean_improvement_simple = mean(simple);
    summary.mean_improvement_extended = mean(extended);
    summary.mean_improvement_greedy = mean(greedy);
    report.summaries.push_back(summary);
  }
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const BenchReport& report, bool wall_time) {
  std::string out = "scenario,batch,seed,strategy,makespan,status,wall_time_s\n";
  for (const auto& row : report.rows) {
    out += csv_field(row.scenario) + "," + std::to_string(row.batch) + "," +
           std::to_string(row.seed) + "," + std::string(to_string(row.strategy)) + ",";
    if (row.makespan) out += format_time(*row.makespan);
    out += "," + row.status + ",";
    if (wall_time) out += fixed(row.wall_time, 6);
    out += "\n";
  }
  return out;
}

std::string report_json(const BenchReport& report, bool wall_time) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"scenario", row.scenario},
           {"batch", row.batch},
           {"seed", row.seed},
           {"strategy", std::string(to_string(row.strategy))},
           {"makespan", row.makespan ? json(*row.makespan) : json(nullptr)},
           {"status", row.status}};
    if (!row.message.empty()) r["message"] = row.message;
    if (wall_time) r["wall_time_s"] = row.wall_time;
    rows.push_back(std::move(r));
  }
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json summaries = json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"scenario", s.scenario},
                         {"mean_improvement_simple", opt(s.mean_improvement_simple)},
                         {"mean_improvement_extended", opt(s.mean_improvement_extended)},
                         {"mean_improvement_greedy", opt(s.mean_improvement_greedy)},
                         {"simple_worse_than_baseline", s.simple_worse_than_baseline}});
  }
  json doc{{"schema", "milq-bench-report/1"}, {"rows", rows}, {"summaries", summaries}};
  return doc.dump(2) + "\n";
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_gantt(const Schedule& schedule, const Instance& instance) {
  constexpr double kLeft = 80, kRight = 20, kTop = 30, kPlotWidth = 860;
  constexpr double kQubitPx = 14, kLaneGap = 16;
  const std::size_t nm = instance.machines.size();
  const double span = schedule.makespan > 0 ? schedule.makespan : 1.0;
  const double scale = kPlotWidth / span;

  std::vector<double> lane_top(nm);
  double y = kTop;
  for (std::size_t m = 0; m < nm; ++m) {
    lane_top[m] = y;
    y += instance.machines[m].capacity * kQubitPx + kLaneGap;
  }
  const double height = y + 20;
  const double width = kLeft + kPlotWidth + kRight;

  // Qubit offsets: first offset whose band is free over the job's interval.
  std::vector<std::size_t> order(schedule.entries.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return schedule.entries[a].start < schedule.entries[b].start;
  });
  std::vector<int> offset(schedule.entries.size(), 0);
  std::vector<std::size_t> done;
  for (std::size_t k : order) {
    const auto& e = schedule.entries[k];
    const int q = instance.jobs[e.job].qubits;
    const int cap = instance.machines[e.machine].capacity;
    for (int o = 0; o + q <= cap; ++o) {
      bool clash = false;
      for (std::size_t d : done) {
        const auto& f = schedule.entries[d];
        if (f.machine != e.machine || f.completion <= e.start || e.completion <= f.start) continue;
        const int fq = instance.jobs[f.job].qubits;
        if (o < offset[d] + fq && offset[d] < o + q) {
          clash = true;
          break;
        }
      }
      if (!clash) {
        offset[k] = o;
        break;
      }
    }
    done.push_back(k);
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) +
         "\" height=\"" + fixed(height, 0) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<text x=\"" + fixed(kLeft, 0) + "\" y=\"18\">makespan " +
         format_time(schedule.makespan) + "</text>\n";
  for (std::size_t m = 0; m < nm; ++m) {
    const double lane_h = instance.machines[m].capacity * kQubitPx;
    out += "<g class=\"lane\">\n";
    out += "<line x1=\"" + fixed(kLeft, 0) + "\" y1=\"" + fixed(lane_top[m] + lane_h, 1) +
           "\" x2=\"" + fixed(kLeft + kPlotWidth, 0) + "\" y2=\"" +
           fixed(lane_top[m] + lane_h, 1) + "\" stroke=\"#888\"/>\n";
    out += "<text x=\"4\" y=\"" + fixed(lane_top[m] + lane_h / 2 + 4, 1) + "\">" +
           xml_escape(instance.machines[m].id) + "</text>\n";
    out += "</g>\n";
  }
  for (std::size_t k = 0; k < schedule.entries.size(); ++k) {
    const auto& e = schedule.entries[k];
    const int q = instance.jobs[e.job].qubits;
    const double lane_h = instance.machines[e.machine].capacity * kQubitPx;
    const double x = kLeft + e.start * scale;
    const double w = std::max(1.0, (e.completion - e.start) * scale);
    const double h = q * kQubitPx;
    const double top = lane_top[e.machine] + lane_h - (offset[k] + q) * kQubitPx;
    const std::string id = xml_escape(instance.jobs[e.job].id);
    out += "<rect x=\"" + fixed(x, 2) + "\" y=\"" + fixed(top, 2) + "\" width=\"" +
           fixed(w, 2) + "\" height=\"" + fixed(h, 2) +
           "\" fill=\"#9ecae1\" stroke=\"#3182bd\"><title>" + id + " [" + format_time(e.start) +
           ", " + format_time(e.completion) + ")</title></rect>\n";
    out += "<text x=\"" + fixed(x + 3, 2) + "\" y=\"" + fixed(top + std::min(h, 14.0) - 3, 2) +
           "\">" + id + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace milq
