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

#include "milq/cutter.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "milq/errors.hpp"

namespace milq {

std::size_t CutPlan::expanded_size() const {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t copies = 1;
  for (int c = 0; c < cut_count; ++c) {
    auto v = static_cast<std::size_t>(variants_per_cut);
    if (copies > kMax / v) return kMax;
    copies *= v;
  }
  if (copies > kMax / std::max<std::size_t>(1, fragments.size())) return kMax;
  return copies * fragments.size();
}

CutPlan plan_cut(const CircuitSpec& circuit, std::span<const int> capacities,
                 int variants_per_cut) {
  if (capacities.empty()) throw InputError("plan_cut needs at least one capacity");
  if (circuit.width < 1 || circuit.depth < 1) {
    throw InputError("circuit " + circuit.id + " needs width >= 1 and depth >= 1");
  }
  if (variants_per_cut < 1) throw InputError("variants_per_cut must be >= 1");
  const int largest = *std::max_element(capacities.begin(), capacities.end());
  if (largest < 1) throw InputError("machine capacities must be >= 1");

  CutPlan plan;
  plan.circuit = circuit.id;
  plan.variants_per_cut = variants_per_cut;
  int remaining = circuit.width;
  while (remaining > largest) {
    plan.fragments.push_back(largest);
    remaining -= largest;
  }
  plan.fragments.push_back(remaining);
  plan.cut_count = static_cast<int>(plan.fragments.size()) - 1;
  return plan;
}

std::vector<CircuitJob> expand_subjobs(const CutPlan& plan, int depth, std::size_t job_cap) {
  if (depth < 1) throw InputError("depth must be >= 1");
  const std::size_t total = plan.expanded_size();
  if (total > job_cap) {
    throw InputError("cutting circuit " + plan.circuit + " would emit more than " +
                     std::to_string(job_cap) + " jobs (job cap)");
  }
  std::vector<CircuitJob> jobs;
  if (plan.cut_count == 0) {
    jobs.push_back({plan.circuit, plan.fragments.at(0), depth, std::nullopt});
    return jobs;
  }
  const std::size_t copies = total / plan.fragments.size();
  jobs.reserve(total);
  for (std::size_t f = 0; f < plan.fragments.size(); ++f) {
    for (std::size_t v = 0; v < copies; ++v) {
      CircuitJob job;
      job.id = plan.circuit + "_f" + std::to_string(f) + "_v" + std::to_string(v);
      job.qubits = plan.fragments[f];
      job.depth = depth;
      job.origin = CutOrigin{plan.circuit, static_cast<int>(f), static_cast<int>(v)};
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

ResizeResult resize_batch(std::span<const CircuitSpec> circuits,
                          std::span<const Machine> machines, int variants_per_cut,
                          std::size_t job_cap) {
  ResizeResult result;
  if (circuits.empty()) return result;
  if (machines.empty()) throw InputError("resize_batch needs at least one machine");
  std::vector<int> capacities;
  for (const auto& m : machines) capacities.push_back(m.capacity);

  std::set<std::string> ids;
  for (const auto& circuit : circuits) {
    CutPlan plan = plan_cut(circuit, capacities, variants_per_cut);
    auto jobs = expand_subjobs(plan, circuit.depth, job_cap);
    ManifestGroup group{circuit.id, {}};
    for (auto& job : jobs) {
      if (!ids.insert(job.id).second) {
        throw InputError("duplicate job id " + job.id + " after cutting");
      }
      int fragment = job.origin ? job.origin->fragment : 0;
      int variant = job.origin ? job.origin->variant : 0;
      group.entries.push_back({job.id, fragment, variant, job.qubits});
      result.jobs.push_back(std::move(job));
    }
    result.manifest.push_back(std::move(group));
  }
  return result;
}

}  // namespace milq
