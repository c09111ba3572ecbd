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

#include "milq/bench.hpp"
#include "milq/errors.hpp"
#include "milq/io.hpp"
#include "milq/solvers.hpp"
#include "support.hpp"

using namespace milq;

namespace {

// Equal timing apart from the unused diagonal s(j, j, m), which is not written.
bool same_timing(const Instance& a, const Instance& b) {
  const std::size_t n = a.jobs.size();
  const std::size_t nm = a.machines.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < nm; ++m) {
      if (a.timing.processing(j, m) != b.timing.processing(j, m)) return false;
      for (PredIndex i = 0; i <= n; ++i) {
        if (i == pred_of(j)) continue;
        if (a.timing.setup(i, j, m) != b.timing.setup(i, j, m)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("instance documents round-trip") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    testing::RandomSpec spec;
    spec.real_times = seed % 2 == 1;
    Instance inst = testing::random_instance(seed, spec);
    inst.granularity = spec.real_times ? 0.5 : 1.0;
    std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(back.jobs == inst.jobs);
    CHECK(back.machines == inst.machines);
    CHECK(same_timing(back, inst));
    CHECK(back.t_max == inst.t_max);
    CHECK(back.big_m == inst.big_m);
    CHECK(back.granularity == inst.granularity);
    CHECK(instance_to_json(back) == text);
  }
}

TEST_CASE("schedule documents round-trip") {
  Instance inst = example_instance();
  Schedule s = solve_greedy(inst).schedule;
  Schedule back = schedule_from_json(schedule_to_json(s, inst), inst);
  CHECK(back == s);
}

TEST_CASE("missing timing entries surface as validation errors") {
  const char* text = R"({
    "schema": "milq-instance/1",
    "jobs": [{"id": "J1", "qubits": 2, "depth": 1}],
    "machines": [{"id": "M1", "capacity": 5}],
    "timing": {"processing": {"J1": {"M1": 3}}, "setup": {}},
    "big_m": 100, "t_max": 10, "granularity": 1})";
  Instance inst = instance_from_json(text);
  CHECK(validate_instance(inst) == std::vector<std::string>{"setup table incomplete"});
}

TEST_CASE("malformed documents are input errors") {
  CHECK_THROWS_AS(instance_from_json("{"), InputError);
  CHECK_THROWS_AS(instance_from_json(R"({"jobs": 3})"), InputError);
  CHECK_THROWS_AS(circuits_from_json(R"([{"id": "A"}])"), InputError);
  Instance inst = example_instance();
  CHECK_THROWS_AS(
      schedule_from_json(R"({"entries": [{"job": "ZZ", "machine": "M1", "start": 0,
                             "completion": 1}], "makespan": 1})",
                         inst),
      InputError);
  CHECK_THROWS_AS(read_file("/nonexistent/milq.json"), InputError);
}

TEST_CASE("list documents accept both shapes") {
  auto bare = circuits_from_json(R"([{"id": "A", "width": 7, "depth": 3}])");
  auto wrapped = circuits_from_json(R"({"circuits": [{"id": "A", "width": 7, "depth": 3}]})");
  REQUIRE(bare.size() == 1);
  CHECK(bare[0].width == wrapped[0].width);
  auto machines = machines_from_json(R"({"machines": [{"id": "M", "capacity": 4}]})");
  CHECK(machines[0].capacity == 4);
  std::vector<CircuitJob> jobs{{"A_f0_v0", 5, 3, CutOrigin{"A", 0, 0}}, {"B", 2, 1, std::nullopt}};
  CHECK(jobs_from_json(jobs_to_json(jobs)) == jobs);
}

TEST_CASE("scenario documents keep defaults for omitted fields") {
  Scenario s = scenario_from_json(R"({"name": "mine", "machines": [{"id": "Q", "capacity": 8}],
                                      "batches": 2, "timing": {"setup_scale": 2.0}})");
  CHECK(s.name == "mine");
  CHECK(s.batches == 2);
  CHECK(s.batch_size == 7);
  CHECK(s.timing.setup_scale == 2.0);
  CHECK(s.timing.variation_fraction == 0.25);
  CHECK_THROWS_AS(scenario_from_json(R"({"name": "x", "machines": []})"), InputError);
}

TEST_CASE("atomic writes create parent directories") {
  auto dir = std::filesystem::temp_directory_path() / "milq_io_test";
  std::filesystem::remove_all(dir);
  auto path = (dir / "sub" / "f.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  CHECK(read_file(path) == "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "sub")) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
