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

// Seeded synthetic processing and setup times.
//
//   p_im  = base_processing_scale * q_i * (1 + u)
//   s_ijm = setup_scale * (q_i + q_j) / 2 * (1 + u),  q_0 = dummy_qubits
//
// with u ~ Uniform(-variation_fraction, +variation_fraction) drawn per entry.
// Each table has its own mt19937_64 stream, advanced in row-major order
// ((i, m) for processing, (i, j, m) for setup, dummy row first). Integer mode
// rounds up, processing to at least 1.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "milq/core_model.hpp"

namespace milq {

enum class TimeMode { integer, real };

struct TimingConfig {
  std::uint64_t seed = 0;
  TimeMode mode = TimeMode::integer;
  double base_processing_scale = 1.0;
  double variation_fraction = 0.25;
  double setup_scale = 0.5;
  /// Multiply processing times by the job's depth.
  bool depth_multiplier = false;
  /// Qubit count assumed for the dummy predecessor.
  double dummy_qubits = 0.0;
};

/// Named random stream; `uniform01` maps the top 53 bits to [0, 1).
class TimingStream {
 public:
  TimingStream(std::uint64_t seed, std::string_view table);

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform(-fraction, +fraction).
  double variation(double fraction) { return fraction * (2.0 * uniform01() - 1.0); }

 private:
  std::mt19937_64 engine_;
};

/// Throws InputError if the config is out of range.
void check_timing_config(const TimingConfig& config);

/// Fills tables.processing(i, m) for every job and machine.
void gen_processing(std::span<const CircuitJob> jobs, std::span<const Machine> machines,
                    const TimingConfig& config, TimingTables& tables);

/// Fills tables.setup(i, j, m) including the dummy row and the unused
/// diagonal entries.
void gen_setup(std::span<const CircuitJob> jobs, std::span<const Machine> machines,
               const TimingConfig& config, TimingTables& tables);

TimingTables synthesize_timing(std::span<const CircuitJob> jobs,
                               std::span<const Machine> machines, const TimingConfig& config);

}  // namespace milq
