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

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "milq/cutter.hpp"
#include "milq/errors.hpp"

using namespace milq;

namespace {

std::map<int, int> width_histogram(const std::vector<CircuitJob>& jobs) {
  std::map<int, int> out;
  for (const auto& j : jobs) ++out[j.qubits];
  return out;
}

}  // namespace

TEST_CASE("plan_cut examples") {
  std::vector<int> five{5, 5};
  auto fits = plan_cut({"C", 3, 1}, five);
  CHECK(fits.fragments == std::vector<int>{3});
  CHECK(fits.cut_count == 0);

  auto one = plan_cut({"A", 7, 1}, five);
  CHECK(one.fragments == std::vector<int>{5, 2});
  CHECK(one.cut_count == 1);

  std::vector<int> mixed{5, 6};
  auto two = plan_cut({"W", 13, 1}, mixed);
  CHECK(two.fragments == std::vector<int>{6, 6, 1});
  CHECK(two.cut_count == 2);
}

TEST_CASE("plan_cut rejects bad input") {
  std::vector<int> caps{5};
  std::vector<int> none;
  CHECK_THROWS_AS(plan_cut({"A", 0, 1}, caps), InputError);
  CHECK_THROWS_AS(plan_cut({"A", 3, 0}, caps), InputError);
  CHECK_THROWS_AS(plan_cut({"A", 3, 1}, none), InputError);
  CHECK_THROWS_AS(plan_cut({"A", 3, 1}, caps, 0), InputError);
}

TEST_CASE("expand_subjobs examples") {
  CutPlan uncut{"C", {3}, 0, 4};
  auto single = expand_subjobs(uncut, 9);
  REQUIRE(single.size() == 1);
  CHECK(single[0].id == "C");
  CHECK(single[0].qubits == 3);
  CHECK(single[0].depth == 9);
  CHECK_FALSE(single[0].origin.has_value());

  CutPlan a{"A", {5, 2}, 1, 4};
  auto jobs = expand_subjobs(a, 10);
  CHECK(jobs.size() == 8);
  CHECK(width_histogram(jobs) == std::map<int, int>{{2, 4}, {5, 4}});
  CHECK(jobs[0].id == "A_f0_v0");
  CHECK(jobs[7].id == "A_f1_v3");

  CutPlan three{"T", {4, 4, 2}, 2, 2};
  CHECK(expand_subjobs(three, 1).size() == 12);
}

TEST_CASE("expand_subjobs enforces the job cap") {
  CutPlan wide{"X", std::vector<int>(7, 5), 6, 4};
  CHECK(wide.expanded_size() == 7 * 4096);
  CHECK_THROWS_WITH_AS(expand_subjobs(wide, 1), doctest::Contains("job cap"), InputError);
  CutPlan huge{"H", std::vector<int>(80, 5), 79, 4};
  CHECK(huge.expanded_size() == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("resize_batch reproduces the two-circuit example") {
  std::vector<CircuitSpec> circuits{{"A", 7, 10}, {"B", 3, 10}};
  std::vector<Machine> machines{{"M1", 5}, {"M2", 5}};
  auto r = resize_batch(circuits, machines, 4);
  CHECK(r.jobs.size() == 9);
  CHECK(width_histogram(r.jobs) == std::map<int, int>{{2, 4}, {3, 1}, {5, 4}});
  REQUIRE(r.manifest.size() == 2);
  CHECK(r.manifest[0].entries.size() == 8);
  CHECK(r.manifest[1].entries.size() == 1);
  CHECK(r.manifest[1].entries[0].job_id == "B");
}

TEST_CASE("resize_batch rejects colliding ids") {
  std::vector<CircuitSpec> circuits{{"A", 7, 1}, {"A_f0_v0", 3, 1}};
  std::vector<Machine> machines{{"M1", 5}};
  CHECK_THROWS_AS(resize_batch(circuits, machines), InputError);
}

TEST_CASE("cutting preserves width and respects the largest capacity") {
  std::mt19937 rng(23);
  for (int round = 0; round < 500; ++round) {
    std::vector<int> caps;
    const int nm = 1 + static_cast<int>(rng() % 3);
    for (int m = 0; m < nm; ++m) caps.push_back(1 + static_cast<int>(rng() % 20));
    const int largest = *std::max_element(caps.begin(), caps.end());
    const int width = 1 + static_cast<int>(rng() % 60);
    auto plan = plan_cut({"C", width, 1}, caps, 1 + static_cast<int>(rng() % 4));
    CHECK(std::accumulate(plan.fragments.begin(), plan.fragments.end(), 0) == width);
    for (int f : plan.fragments) {
      CHECK(f >= 1);
      CHECK(f <= largest);
    }
    // Only necessary cuts.
    CHECK(plan.cut_count == (width + largest - 1) / largest - 1);
  }
}
