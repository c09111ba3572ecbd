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

// Width-based circuit resizing. Circuits wider than every machine are split
// greedily into fragments of the largest capacity plus a remainder; each cut
// multiplies the number of subexperiments by `variants_per_cut`.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "milq/core_model.hpp"

namespace milq {

inline constexpr int kDefaultVariantsPerCut = 4;
inline constexpr std::size_t kDefaultJobCap = 1024;

struct CircuitSpec {
  std::string id;
  int width = 1;
  int depth = 1;
};

struct CutPlan {
  std::string circuit;
  std::vector<int> fragments;
  int cut_count = 0;
  int variants_per_cut = kDefaultVariantsPerCut;

  /// |fragments| * variants_per_cut^cut_count, saturating at SIZE_MAX.
  std::size_t expanded_size() const;
};

struct ManifestEntry {
  std::string job_id;
  int fragment_index = 0;
  int variant_index = 0;
  int width = 0;
};

struct ManifestGroup {
  std::string circuit;
  std::vector<ManifestEntry> entries;
};

struct ResizeResult {
  std::vector<CircuitJob> jobs;
  std::vector<ManifestGroup> manifest;
};

CutPlan plan_cut(const CircuitSpec& circuit, std::span<const int> capacities,
                 int variants_per_cut = kDefaultVariantsPerCut);

/// Emits variants_per_cut^cut_count copies of every fragment (one job when
/// nothing was cut). Throws InputError when the expansion exceeds job_cap.
std::vector<CircuitJob> expand_subjobs(const CutPlan& plan, int depth,
                                       std::size_t job_cap = kDefaultJobCap);

ResizeResult resize_batch(std::span<const CircuitSpec> circuits,
                          std::span<const Machine> machines,
                          int variants_per_cut = kDefaultVariantsPerCut,
                          std::size_t job_cap = kDefaultJobCap);

}  // namespace milq
