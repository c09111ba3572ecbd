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

// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "milq/core_model.hpp"

namespace milq::testing {

/// Jobs J1..Jn and machines M1..Mk with the given widths and capacities;
/// every timing entry starts at `fill`.
inline Instance blank_instance(const std::vector<int>& qubits, const std::vector<int>& capacities,
                               double fill = 0.0) {
  Instance inst;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    inst.jobs.push_back({"J" + std::to_string(j + 1), qubits[j], 1, std::nullopt});
  }
  for (std::size_t m = 0; m < capacities.size(); ++m) {
    inst.machines.push_back({"M" + std::to_string(m + 1), capacities[m]});
  }
  inst.timing = TimingTables(qubits.size(), capacities.size());
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    for (std::size_t m = 0; m < capacities.size(); ++m) {
      inst.timing.processing(j, m) = fill;
      for (PredIndex i = 0; i <= qubits.size(); ++i) inst.timing.setup(i, j, m) = fill;
    }
  }
  return inst;
}

struct RandomSpec {
  int min_jobs = 1;
  int max_jobs = 4;
  int machines = 2;
  int min_capacity = 2;
  int max_capacity = 5;
  int max_processing = 5;
  int max_setup = 5;
  int t_max = 30;
  bool real_times = false;
};

/// Seeded random instance. Integer times lie in [1, max_processing] and
/// [0, max_setup]; real mode draws from the same ranges continuously.
inline Instance random_instance(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto real = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const int n = pick(spec.min_jobs, spec.max_jobs);
  std::vector<int> caps;
  for (int m = 0; m < spec.machines; ++m) caps.push_back(pick(spec.min_capacity, spec.max_capacity));
  const int widest = *std::max_element(caps.begin(), caps.end());
  std::vector<int> qubits;
  for (int j = 0; j < n; ++j) qubits.push_back(pick(1, widest));
  Instance inst = blank_instance(qubits, caps);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < spec.machines; ++m) {
      inst.timing.processing(j, m) =
          spec.real_times ? real(0.5, spec.max_processing) : pick(1, spec.max_processing);
      for (int i = 0; i <= n; ++i) {
        inst.timing.setup(i, j, m) =
            spec.real_times ? real(0.0, spec.max_setup) : pick(0, spec.max_setup);
      }
    }
  }
  inst.t_max = spec.t_max;
  inst.big_m = spec.t_max + 2.0 + n * (spec.max_processing + spec.max_setup);
  return inst;
}

/// Horizon large enough for any serial schedule of the instance.
inline int serial_horizon(const Instance& inst) {
  double total = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    double worst = 0;
    for (std::size_t m = 0; m < inst.machines.size(); ++m) {
      for (PredIndex i = 0; i <= inst.jobs.size(); ++i) {
        worst = std::max(worst, inst.timing.processing(j, m) + inst.timing.setup(i, j, m));
      }
    }
    total += worst;
  }
  return static_cast<int>(total) + 1;
}

/// Solver template from the environment, if any.
inline bool solver_configured() {
  const char* env = std::getenv("MILQ_SOLVER_CMD");
  return env != nullptr && *env != '\0';
}

}  // namespace milq::testing
