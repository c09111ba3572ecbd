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

// Time-indexed MILP for makespan minimization.
//
// Time is measured in slots of `granularity` time units; slot t covers
// [t, t + 1). A job occupying slots b..c-1 has start b and completion c, the
// same half-open convention as the evaluator. Two model variants exist:
//
//  * extended: sequence-dependent setups. The successor relation is encoded
//    exactly (y is 1 precisely for the jobs in a job's predecessor layer) and
//    a job's setup is the maximum over its predecessors, selected through the
//    binding-predecessor variables w.
//  * simple: predecessor-independent setups s_jm (max aggregation); no
//    successor variables.
//
// Constraint labels C1..C20 follow the classic time-indexed formulation;
// suffixed labels (C5b, C16b, ...) are the reverse-direction linearizations
// that make the helper variables exact.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "milq/core_model.hpp"

namespace milq {

enum class ModelMode { simple, extended };

std::string_view to_string(ModelMode mode);

enum class VarKind { binary, continuous };

struct Variable {
  std::string name;
  VarKind kind = VarKind::binary;
  double lower = 0.0;
  double upper = 1.0;
};

enum class Sense { le, ge, eq };

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::string label;
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

/// Index space of all variable families. Accessors return positions in
/// MilpModel::variables; families absent from the mode must not be queried.
/// `pred` arguments use PredIndex (0 = dummy job).
class VarSpace {
 public:
  VarSpace() = default;
  VarSpace(std::size_t jobs, std::size_t machines, int t_max, ModelMode mode);

  std::size_t jobs() const { return n_; }
  std::size_t machines() const { return m_; }
  std::size_t slots() const { return slots_; }
  bool extended() const { return extended_; }
  std::size_t size() const { return size_; }

  std::size_t x(std::size_t j, std::size_t m) const { return x_ + j * m_ + m; }
  std::size_t y(PredIndex i, std::size_t j, std::size_t m) const {
    return y_ + (i * n_ + j) * m_ + m;
  }
  std::size_t z(std::size_t j, std::size_t m, std::size_t t) const {
    return z_ + (j * m_ + m) * slots_ + t;
  }
  std::size_t alpha(std::size_t i, std::size_t j) const { return alpha_ + pair(i, j); }
  std::size_t beta(std::size_t i, std::size_t j) const { return beta_ + pair(i, j); }
  std::size_t gamma(std::size_t i, std::size_t j, std::size_t m) const {
    return gamma_ + pair(i, j) * m_ + m;
  }
  std::size_t delta(std::size_t i, std::size_t j, std::size_t k, std::size_t m) const {
    return delta_ + (pair(i, j) * n_ + k) * m_ + m;
  }
  std::size_t w(PredIndex i, std::size_t j, std::size_t m) const {
    return w_ + (i * n_ + j) * m_ + m;
  }
  std::size_t b(std::size_t j) const { return b_ + j; }
  std::size_t c(std::size_t j) const { return c_ + j; }
  std::size_t c0() const { return c0_; }
  std::size_t cmax() const { return cmax_; }

  /// Variable count per family, in declaration order.
  std::vector<std::pair<std::string, std::size_t>> family_sizes() const;

 private:
  // Ordered pairs (i, j) with i != j.
  std::size_t pair(std::size_t i, std::size_t j) const {
    return i * (n_ - 1) + (j < i ? j : j - 1);
  }

  std::size_t n_ = 0, m_ = 0, slots_ = 0;
  bool extended_ = false;
  std::size_t x_ = 0, y_ = 0, z_ = 0, alpha_ = 0, beta_ = 0, gamma_ = 0, delta_ = 0, w_ = 0;
  std::size_t b_ = 0, c_ = 0, c0_ = 0, cmax_ = 0, size_ = 0;
};

struct ModelStats {
  std::size_t num_variables = 0;
  std::size_t num_constraints = 0;
  std::map<std::string, std::size_t> constraints_by_label;
};

struct MilpModel {
  ModelMode mode = ModelMode::extended;
  VarSpace space;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  ModelStats stats;
  double granularity = 1.0;
  double big_m = 1000.0;
  /// Durations in slots, rounded up from the instance's times.
  std::vector<int> processing_slots;  // [j * machines + m]
  std::vector<int> setup_slots;       // [(pred * jobs + j) * machines + m], extended
  std::vector<int> job_setup_slots;   // [j * machines + m], simple

  std::unordered_map<std::string, std::size_t> name_index() const;
};

/// Converts a duration to whole slots, rounding up.
int to_slots(Time duration, double granularity);

/// Builds the extended model. Throws SizingError when t_max is below its lower
/// bound and InputError for other instance violations.
MilpModel build_extended(const Instance& instance);

/// Builds the simple model from a predecessor-independent setup table.
MilpModel build_simple(const Instance& instance, const JobSetupTable& job_setup);

/// LP file text: Minimize / Subject To / Bounds / Binaries / End.
std::string serialize_lp(const MilpModel& model);

enum class SolveStatus { optimal, gap_terminated, infeasible, timeout };

std::string_view to_string(SolveStatus status);
std::optional<SolveStatus> parse_status(std::string_view text);

struct MilpSolution {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  double reported_gap = 0.0;
  /// Indexed like MilpModel::variables; absent entries are 0.
  std::vector<double> values;
  /// True when the solution carries an objective and variable values.
  bool has_incumbent = false;
};

/// Parses the adapter's solution format: "status <s>", "objective <v>",
/// "gap <g>" header lines followed by "name value" lines. Throws InputError
/// on empty input, a missing objective, or unknown variable names.
MilpSolution parse_solution(std::string_view text, const MilpModel& model);

/// Writes "name value" lines for the nonzero entries of `values`.
std::string format_assignment(const MilpModel& model, const std::vector<double>& values);

/// Reads the schedule (machine from x, start from b) and evaluates it in the
/// mode matching the model. Throws SolverFailure when x is ambiguous or the
/// schedule fails validation (the message names the violated family).
Schedule extract_schedule(const MilpSolution& solution, const MilpModel& model,
                          const Instance& instance);

/// Full variable assignment corresponding to a schedule whose starts lie on
/// slot boundaries. Completions are recomputed in slot units.
std::vector<double> assignment_from_schedule(const MilpModel& model, const Instance& instance,
                                             const Schedule& schedule);

/// Names of violated constraints, bounds, or integrality requirements.
std::vector<std::string> check_assignment(const MilpModel& model,
                                          const std::vector<double>& values,
                                          double tolerance = 1e-6);

}  // namespace milq
