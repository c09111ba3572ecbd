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

// Domain model for batch scheduling of circuit jobs on a cluster of QPUs.
//
// Jobs occupy `qubits` of a machine's `capacity` for the half-open interval
// [start, completion). Several jobs may share a machine as long as the summed
// qubit usage never exceeds its capacity. A job's completion is
//
//     completion = start + processing(job, machine) + setup(job)
//
// where setup depends on the job's predecessors on the machine. The
// predecessors of j are the jobs on the same machine whose completion is the
// latest completion at or before j's start (every job finishing at that
// instant counts). A job with no such completion follows the dummy job 0.
// Several predecessors combine by taking the maximum of their setup times.

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace milq {

using Time = double;

/// Predecessor index in setup tables: 0 is the dummy job, k + 1 is job k.
using PredIndex = std::size_t;
inline constexpr PredIndex kDummy = 0;
inline constexpr PredIndex pred_of(std::size_t job) { return job + 1; }

/// Bookkeeping attached to jobs produced by cutting a wider circuit.
struct CutOrigin {
  std::string parent;
  int fragment = 0;
  int variant = 0;

  bool operator==(const CutOrigin&) const = default;
};

struct CircuitJob {
  std::string id;
  int qubits = 1;
  int depth = 1;
  std::optional<CutOrigin> origin;

  bool operator==(const CircuitJob&) const = default;
};

struct Machine {
  std::string id;
  int capacity = 1;

  bool operator==(const Machine&) const = default;
};

/// Dense processing table p[job][machine] and setup table
/// s[pred][job][machine]. Missing entries are NaN.
class TimingTables {
 public:
  TimingTables() = default;
  TimingTables(std::size_t num_jobs, std::size_t num_machines);

  std::size_t num_jobs() const { return jobs_; }
  std::size_t num_machines() const { return machines_; }

  Time processing(std::size_t job, std::size_t machine) const {
    return processing_[job * machines_ + machine];
  }
  Time& processing(std::size_t job, std::size_t machine) {
    return processing_[job * machines_ + machine];
  }
  Time setup(PredIndex pred, std::size_t job, std::size_t machine) const {
    return setup_[(pred * jobs_ + job) * machines_ + machine];
  }
  Time& setup(PredIndex pred, std::size_t job, std::size_t machine) {
    return setup_[(pred * jobs_ + job) * machines_ + machine];
  }

  bool operator==(const TimingTables&) const = default;

 private:
  std::size_t jobs_ = 0;
  std::size_t machines_ = 0;
  std::vector<Time> processing_;
  std::vector<Time> setup_;
};

/// Predecessor-independent setup table s[job][machine], used by the simple
/// model and by job-only evaluation.
class JobSetupTable {
 public:
  JobSetupTable() = default;
  JobSetupTable(std::size_t num_jobs, std::size_t num_machines)
      : machines_(num_machines),
        values_(num_jobs * num_machines, std::numeric_limits<Time>::quiet_NaN()) {}

  Time operator()(std::size_t job, std::size_t machine) const {
    return values_[job * machines_ + machine];
  }
  Time& operator()(std::size_t job, std::size_t machine) {
    return values_[job * machines_ + machine];
  }
  std::size_t num_machines() const { return machines_; }
  std::size_t num_jobs() const { return machines_ == 0 ? 0 : values_.size() / machines_; }

 private:
  std::size_t machines_ = 0;
  std::vector<Time> values_;
};

struct Instance {
  std::vector<CircuitJob> jobs;
  std::vector<Machine> machines;
  TimingTables timing;
  double big_m = 1000.0;
  int t_max = 64;
  double granularity = 1.0;

  std::optional<std::size_t> job_index(const std::string& id) const;
  std::optional<std::size_t> machine_index(const std::string& id) const;
  /// Largest machine capacity, 0 when there are no machines.
  int max_capacity() const;
  /// True when every timing entry and the granularity are integers.
  bool integer_times() const;
  /// Horizon end in time units: t_max * granularity.
  Time horizon() const { return t_max * granularity; }
};

/// Lower bound on t_max: ceil(sum_j min_m (p_jm + min_i s_ijm) /
/// (granularity * |M|)).
int t_max_lower_bound(const Instance& instance);

/// A job's machine and start time, the input of schedule evaluation.
struct Placement {
  std::size_t job = 0;
  std::size_t machine = 0;
  Time start = 0;

  bool operator==(const Placement&) const = default;
};

struct ScheduleEntry {
  std::size_t job = 0;
  std::size_t machine = 0;
  Time start = 0;
  Time completion = 0;

  bool operator==(const ScheduleEntry&) const = default;
};

struct Schedule {
  std::vector<ScheduleEntry> entries;
  Time makespan = 0;

  bool operator==(const Schedule&) const = default;
  std::vector<Placement> placements() const;
};

struct Succession {
  PredIndex pred = kDummy;
  std::size_t job = 0;
  std::size_t machine = 0;

  bool operator==(const Succession&) const = default;
  auto operator<=>(const Succession&) const = default;
};

/// Realized successor facts (pred, job, machine), sorted.
struct SuccessorMap {
  std::vector<Succession> relation;

  std::vector<PredIndex> predecessors_of(std::size_t job) const;
};

enum class SetupMode { sequence_dependent, job_only };

struct Evaluation {
  Schedule schedule;
  /// Number of update passes that changed some completion time.
  int iterations = 0;
};

std::vector<std::string> validate_instance(const Instance& instance);

std::vector<std::string> validate_schedule(const Schedule& schedule, const Instance& instance);

/// Throws InputError for entries referencing unknown jobs or machines.
SuccessorMap derive_successors(const Schedule& schedule, const Instance& instance);

/// s_jm = max over i in J u {0}, i != j, of s_ijm.
JobSetupTable aggregate_setup_max(const TimingTables& timing);

/// Computes completion times for the given placements (a subset of the
/// instance's jobs is allowed) by iterating the successor relation to a fixed
/// point. Job-only mode uses `job_setup` when given, otherwise the max
/// aggregation of the instance's setup table. Throws EvaluationError when no
/// fixed point is reached within |J| update passes.
Evaluation evaluate(std::span<const Placement> placements, const Instance& instance,
                    SetupMode mode, const JobSetupTable* job_setup = nullptr);

Schedule evaluate_schedule(std::span<const Placement> placements, const Instance& instance,
                           SetupMode mode, const JobSetupTable* job_setup = nullptr);

/// Shortest round-trip text for a time value ("3", "2.5").
std::string format_time(Time t);

}  // namespace milq
