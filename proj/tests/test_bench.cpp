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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <regex>

#include <json.hpp>

#include "milq/bench.hpp"
#include "milq/errors.hpp"
#include "milq/io.hpp"
#include "support.hpp"

using namespace milq;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("builtin scenarios") {
  auto two = builtin_scenario("paper-two-qpu");
  CHECK(two.machines.size() == 2);
  CHECK(two.batches == 10);
  CHECK(two.batch_size == 7);
  auto three = builtin_scenario("paper-three-qpu");
  REQUIRE(three.machines.size() == 3);
  CHECK(three.machines[2].capacity == 20);
  CHECK(builtin_scenario_names().size() == 2);
  CHECK_THROWS_AS(builtin_scenario("four"), InputError);
  Scenario bad = two;
  bad.batch_size = 0;
  CHECK_THROWS_AS(check_scenario(bad), InputError);
}

TEST_CASE("gen_batch draws within the configured ranges") {
  auto three = builtin_scenario("paper-three-qpu");
  for (int b = 0; b < three.batches; ++b) {
    Instance inst = gen_batch(three, b);
    REQUIRE(inst.jobs.size() == 7);
    for (const auto& j : inst.jobs) {
      CHECK(j.qubits >= 2);
      CHECK(j.qubits <= 20);
      CHECK(j.depth >= 5);
      CHECK(j.depth <= 50);
    }
    CHECK(validate_instance(inst).empty());
    CHECK(inst.integer_times());
    CHECK(solve_baseline(inst).schedule.makespan <= inst.horizon());
  }
  CHECK(batch_seed(three, 4) == three.timing.seed + 4);
}

TEST_CASE("gen_batch is deterministic") {
  auto two = builtin_scenario("paper-two-qpu");
  Instance a = gen_batch(two, 3);
  Instance b = gen_batch(two, 3);
  CHECK(a.jobs == b.jobs);
  CHECK(a.timing == b.timing);
  CHECK(a.t_max == b.t_max);
  CHECK_FALSE(gen_batch(two, 4).timing == a.timing);
}

TEST_CASE("size_horizon follows the baseline") {
  auto two = builtin_scenario("paper-two-qpu");
  Instance inst = gen_batch(two, 0);
  const Time base = solve_baseline(inst).schedule.makespan;
  CHECK(inst.t_max == std::max<int>(static_cast<int>(std::ceil(1.2 * base)),
                                    t_max_lower_bound(inst)));
  CHECK(inst.big_m > inst.t_max + 1);
}

TEST_CASE("example instance") {
  Instance inst = example_instance();
  CHECK(inst.jobs.size() == 9);
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("gantt rectangles match the job count") {
  Instance one = testing::blank_instance({2}, {5}, 1.0);
  one.t_max = 5;
  auto svg = render_gantt(solve_baseline(one).schedule, one);
  CHECK(count_of(svg, "<rect") == 1);

  Instance ex = example_instance();
  auto ex_svg = render_gantt(solve_greedy(ex).schedule, ex);
  CHECK(count_of(ex_svg, "<rect") == 9);
  CHECK(count_of(ex_svg, "class=\"lane\"") == 2);
  CHECK(render_gantt(solve_greedy(ex).schedule, ex) == ex_svg);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = testing::random_instance(seed);
    auto s = render_gantt(solve_greedy(inst).schedule, inst);
    CHECK(count_of(s, "<rect") == inst.jobs.size());
  }
}

TEST_CASE("heuristic bench report is reproducible") {
  std::vector<Scenario> scenarios{builtin_scenario("paper-two-qpu")};
  scenarios[0].batches = 3;
  BenchOptions options;
  options.strategies = {Strategy::baseline, Strategy::greedy};
  auto a = run_scenarios(scenarios, options);
  options.workers = 3;
  auto b = run_scenarios(scenarios, options);
  CHECK(report_csv(a, false) == report_csv(b, false));
  CHECK(report_json(a, false) == report_json(b, false));
  CHECK(a.rows.size() == 6);
  auto lines = report_csv(a, false);
  CHECK(lines.rfind("scenario,batch,seed,strategy,makespan,status,wall_time_s\n", 0) == 0);
  CHECK(std::regex_search(lines, std::regex("\\npaper-two-qpu,0,0,baseline,[0-9]+,ok,\\n")));
  auto json = nlohmann::json::parse(report_json(a));
  CHECK(json["schema"] == "milq-bench-report/1");
  CHECK(json["rows"].size() == 6);
}

TEST_CASE("summary uses (baseline - strategy) / baseline") {
  std::vector<Scenario> scenarios{builtin_scenario("paper-two-qpu")};
  scenarios[0].batches = 4;
  BenchOptions options;
  options.strategies = {Strategy::baseline, Strategy::greedy};
  auto report = run_scenarios(scenarios, options);
  double sum = 0;
  for (int b = 0; b < 4; ++b) {
    const Time base = *report.rows[2 * b].makespan;
    const Time greedy = *report.rows[2 * b + 1].makespan;
    sum += (base - greedy) / base;
  }
  REQUIRE(report.summaries.size() == 1);
  CHECK(report.summaries[0].mean_improvement_greedy.value() == doctest::Approx(sum / 4));
  CHECK_FALSE(report.summaries[0].mean_improvement_extended.has_value());
  CHECK(report.summaries[0].simple_worse_than_baseline == 0);
}

TEST_CASE("missing solver is recorded per row") {
  if (testing::solver_configured()) return;
  std::vector<Scenario> scenarios{builtin_scenario("paper-two-qpu")};
  scenarios[0].batches = 1;
  BenchOptions options;
  options.strategies = {Strategy::baseline, Strategy::extended};
  auto report = run_scenarios(scenarios, options);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[1].status == "unavailable");
  CHECK_FALSE(report.rows[1].makespan.has_value());
}

TEST_CASE("gantt files are written on request") {
  auto dir = std::filesystem::temp_directory_path() / "milq_gantt_test";
  std::filesystem::remove_all(dir);
  std::vector<Scenario> scenarios{builtin_scenario("paper-two-qpu")};
  scenarios[0].batches = 2;
  BenchOptions options;
  options.strategies = {Strategy::baseline};
  options.gantt_dir = dir.string();
  run_scenarios(scenarios, options);
  CHECK(std::filesystem::exists(dir / "paper-two-qpu_b0_baseline.svg"));
  CHECK(std::filesystem::exists(dir / "paper-two-qpu_b1_baseline.svg"));
  std::filesystem::remove_all(dir);
}
