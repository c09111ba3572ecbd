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

#include "milq/timing.hpp"

#include <algorithm>
#include <cmath>

#include "milq/errors.hpp"

namespace milq {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Time finish(double value, const TimingConfig& config, double floor_value) {
  if (config.mode == TimeMode::real) return value;
  // 1e-9 keeps exact products such as 5 * (1 + 0) from rounding up.
  return std::max(floor_value, std::ceil(value - 1e-9));
}

}  // namespace

TimingStream::TimingStream(std::uint64_t seed, std::string_view table)
    : engine_(splitmix64(seed ^ fnv1a(table))) {}

void check_timing_config(const TimingConfig& config) {
  if (!(config.variation_fraction >= 0.0 && config.variation_fraction < 1.0)) {
    throw InputError("variation_fraction must lie in [0, 1)");
  }
  if (!(config.base_processing_scale > 0.0)) {
    throw InputError("base_processing_scale must be > 0");
  }
  if (!(config.setup_scale > 0.0)) throw InputError("setup_scale must be > 0");
  if (config.dummy_qubits < 0.0) throw InputError("dummy_qubits must be >= 0");
}

void gen_processing(std::span<const CircuitJob> jobs, std::span<const Machine> machines,
                    const TimingConfig& config, TimingTables& tables) {
  check_timing_config(config);
  TimingStream stream(config.seed, "processing");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    double size = static_cast<double>(jobs[i].qubits);
    if (config.depth_multiplier) size *= jobs[i].depth;
    for (std::size_t m = 0; m < machines.size(); ++m) {
      double u = stream.variation(config.variation_fraction);
      tables.processing(i, m) = finish(config.base_processing_scale * size * (1.0 + u), config, 1.0);
    }
  }
}

void gen_setup(std::span<const CircuitJob> jobs, std::span<const Machine> machines,
               const TimingConfig& config, TimingTables& tables) {
  check_timing_config(config);
  TimingStream stream(config.seed, "setup");
  for (PredIndex i = 0; i <= jobs.size(); ++i) {
    double qi = i == kDummy ? config.dummy_qubits : jobs[i - 1].qubits;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      double mean = config.setup_scale * (qi + jobs[j].qubits) / 2.0;
      for (std::size_t m = 0; m < machines.size(); ++m) {
        double u = stream.variation(config.variation_fraction);
        tables.setup(i, j, m) = finish(mean * (1.0 + u), config, 0.0);
      }
    }
  }
}

TimingTables synthesize_timing(std::span<const CircuitJob> jobs,
                               std::span<const Machine> machines, const TimingConfig& config) {
  TimingTables tables(jobs.size(), machines.size());
  gen_processing(jobs, machines, config, tables);
  gen_setup(jobs, machines, config, tables);
  return tables;
}

}  // namespace milq
