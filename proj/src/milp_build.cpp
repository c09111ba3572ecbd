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

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "milq/errors.hpp"
#include "milq/milp.hpp"

namespace milq {

std::string_view to_string(ModelMode mode) {
  return mode == ModelMode::simple ? "simple" : "extended";
}

VarSpace::VarSpace(std::size_t jobs, std::size_t machines, int t_max, ModelMode mode)
    : n_(jobs), m_(machines), slots_(static_cast<std::size_t>(t_max) + 1),
      extended_(mode == ModelMode::extended) {
  const std::size_t pairs = n_ == 0 ? 0 : n_ * (n_ - 1);
  std::size_t at = 0;
  x_ = at;
  at += n_ * m_;
  y_ = at;
  if (extended_) at += (n_ + 1) * n_ * m_;
  z_ = at;
  at += n_ * m_ * slots_;
  alpha_ = at;
  if (extended_) at += pairs;
  beta_ = at;
  if (extended_) at += pairs;
  gamma_ = at;
  if (extended_) at += pairs * m_;
  delta_ = at;
  if (extended_) at += pairs * n_ * m_;
  w_ = at;
  if (extended_) at += (n_ + 1) * n_ * m_;
  b_ = at;
  at += n_;
  c_ = at;
  at += n_;
  c0_ = at;
  if (n_ > 0) ++at;
  cmax_ = at++;
  size_ = at;
}

std::vector<std::pair<std::string, std::size_t>> VarSpace::family_sizes() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  out.emplace_back("x", y_ - x_);
  if (extended_) out.emplace_back("y", z_ - y_);
  out.emplace_back("z", alpha_ - z_);
  if (extended_) {
    out.emplace_back("alpha", beta_ - alpha_);
    out.emplace_back("beta", gamma_ - beta_);
    out.emplace_back("gamma", delta_ - gamma_);
    out.emplace_back("delta", w_ - delta_);
    out.emplace_back("w", b_ - w_);
  }
  out.emplace_back("b", c_ - b_);
  out.emplace_back("c", c0_ - c_);
  out.emplace_back("c_0", cmax_ - c0_);
  out.emplace_back("c_max", 1);
  return out;
}

std::unordered_map<std::string, std::size_t> MilpModel::name_index() const {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(variables.size());
  for (std::size_t v = 0; v < variables.size(); ++v) index.emplace(variables[v].name, v);
  return index;
}

int to_slots(Time duration, double granularity) {
  return std::max(0, static_cast<int>(std::ceil(duration / granularity - 1e-9)));
}

namespace {

std::string sanitize(const std::string& id) {
  std::string out = id;
  for (char& ch : out) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
              ch == '_';
    if (!ok) ch = '_';
  }
  return out;
}

class ModelBuilder {
 public:
  ModelBuilder(const Instance& instance, ModelMode mode)
      : instance_(instance), n_(instance.jobs.size()), nm_(instance.machines.size()) {
    check_instance();
    model_.mode = mode;
    model_.granularity = instance.granularity;
    model_.big_m = instance.big_m;
    model_.space = VarSpace(n_, nm_, instance.t_max, mode);
    big_m_ = instance.big_m;

    model_.processing_slots.resize(n_ * nm_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        model_.processing_slots[j * nm_ + m] =
            std::max(1, to_slots(instance.timing.processing(j, m), instance.granularity));
      }
    }
  }

  MilpModel build_extended() {
    const auto& t = instance_.timing;
    model_.setup_slots.assign((n_ + 1) * n_ * nm_, 0);
    for (PredIndex i = 0; i <= n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == pred_of(j)) continue;
        for (std::size_t m = 0; m < nm_; ++m) {
          model_.setup_slots[(i * n_ + j) * nm_ + m] =
              to_slots(t.setup(i, j, m), instance_.granularity);
        }
      }
    }
    declare_variables();
    add_common();
    add_successor_constraints();
    return finish();
  }

  MilpModel build_simple(const JobSetupTable& job_setup) {
    if (job_setup.num_jobs() != n_ || job_setup.num_machines() != nm_) {
      throw InputError("job-only setup table does not match jobs x machines");
    }
    model_.job_setup_slots.resize(n_ * nm_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        if (std::isnan(job_setup(j, m)) || job_setup(j, m) < 0) {
          throw InputError("job-only setup table incomplete");
        }
        model_.job_setup_slots[j * nm_ + m] = to_slots(job_setup(j, m), instance_.granularity);
      }
    }
    declare_variables();
    add_common();
    return finish();
  }

 private:
  void check_instance() const {
    auto violations = validate_instance(instance_);
    if (violations.empty()) return;
    for (const auto& v : violations) {
      if (v.find("below lower bound") != std::string::npos) {
        throw SizingError(v + "; raise t_max to at least the bound");
      }
    }
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw InputError(msg);
  }

  void make_tokens(bool by_index) {
    jobs_.clear();
    machines_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      jobs_.push_back(by_index ? "j" + std::to_string(j) : sanitize(instance_.jobs[j].id));
    }
    for (std::size_t m = 0; m < nm_; ++m) {
      machines_.push_back(by_index ? "m" + std::to_string(m)
                                   : sanitize(instance_.machines[m].id));
    }
  }

  std::string pred_token(PredIndex i) const { return i == kDummy ? "0" : jobs_[i - 1]; }

  void name_all() {
    const auto& s = model_.space;
    auto& vars = model_.variables;
    vars.assign(s.size(), Variable{});
    const double horizon = instance_.t_max;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        vars[s.x(j, m)].name = "x_" + jobs_[j] + "_" + machines_[m];
        for (std::size_t t = 0; t < s.slots(); ++t) {
          vars[s.z(j, m, t)].name =
              "z_" + jobs_[j] + "_" + machines_[m] + "_" + std::to_string(t);
        }
      }
      vars[s.b(j)] = {"b_" + jobs_[j], VarKind::continuous, 0.0, horizon};
      vars[s.c(j)] = {"c_" + jobs_[j], VarKind::continuous, 0.0, horizon};
    }
    if (s.extended()) {
      for (PredIndex i = 0; i <= n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          for (std::size_t m = 0; m < nm_; ++m) {
            std::string suffix = pred_token(i) + "_" + jobs_[j] + "_" + machines_[m];
            double ub = i == pred_of(j) ? 0.0 : 1.0;
            vars[s.y(i, j, m)] = {"y_" + suffix, VarKind::binary, 0.0, ub};
            vars[s.w(i, j, m)] = {"w_" + suffix, VarKind::binary, 0.0, ub};
          }
        }
      }
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (i == j) continue;
          vars[s.alpha(i, j)].name = "al_" + jobs_[i] + "_" + jobs_[j];
          vars[s.beta(i, j)].name = "be_" + jobs_[i] + "_" + jobs_[j];
          for (std::size_t m = 0; m < nm_; ++m) {
            vars[s.gamma(i, j, m)].name = "ga_" + jobs_[i] + "_" + jobs_[j] + "_" + machines_[m];
            for (std::size_t k = 0; k < n_; ++k) {
              vars[s.delta(i, j, k, m)].name =
                  "de_" + jobs_[i] + "_" + jobs_[j] + "_" + jobs_[k] + "_" + machines_[m];
            }
          }
        }
      }
    }
    if (n_ > 0) {
      vars[s.c0()] = {"c_0", VarKind::continuous, 0.0, std::numeric_limits<double>::infinity()};
    }
    vars[s.cmax()] = {"cmax", VarKind::continuous, 0.0, std::numeric_limits<double>::infinity()};
  }

  void declare_variables() {
    make_tokens(false);
    name_all();
    std::unordered_set<std::string> seen;
    bool unique = true;
    for (const auto& v : model_.variables) {
      if (!seen.insert(v.name).second) {
        unique = false;
        break;
      }
    }
    if (!unique) {
      // Sanitized ids collide; fall back to positional tokens.
      make_tokens(true);
      name_all();
    }
  }

  void add(std::string name, const char* label, std::vector<Term> terms, Sense sense,
           double rhs) {
    model_.constraints.push_back({std::move(name), label, std::move(terms), sense, rhs});
  }

  std::string tag(const char* label, std::initializer_list<std::string> parts) const {
    std::string out = label;
    for (const auto& p : parts) out += "_" + p;
    return out;
  }

  int p_slots(std::size_t j, std::size_t m) const { return model_.processing_slots[j * nm_ + m]; }
  int s_slots(PredIndex i, std::size_t j, std::size_t m) const {
    return model_.setup_slots[(i * n_ + j) * nm_ + m];
  }

  // C1-C4 and C7-C11 (shared), plus the simple-model C5.
  void add_common() {
    const auto& s = model_.space;
    const std::size_t slots = s.slots();
    for (std::size_t j = 0; j < n_; ++j) {
      add(tag("C1", {jobs_[j]}), "C1", {{s.c(j), 1}, {s.cmax(), -1}}, Sense::le, 0);
    }
    if (n_ > 0) add("C2", "C2", {{s.c0(), 1}}, Sense::eq, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<Term> terms;
      for (std::size_t m = 0; m < nm_; ++m) terms.push_back({s.x(j, m), 1});
      add(tag("C3", {jobs_[j]}), "C3", std::move(terms), Sense::eq, 1);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t t = 0; t < slots; ++t) {
        std::vector<Term> terms;
        for (std::size_t m = 0; m < nm_; ++m) terms.push_back({s.z(j, m, t), 1});
        add(tag("C4", {jobs_[j], std::to_string(t)}), "C4", std::move(terms), Sense::le, 1);
      }
    }
    if (!s.extended()) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::vector<Term> terms{{s.c(j), 1}, {s.b(j), -1}};
        for (std::size_t m = 0; m < nm_; ++m) {
          double d = p_slots(j, m) + model_.job_setup_slots[j * nm_ + m];
          terms.push_back({s.x(j, m), -d});
        }
        add(tag("C5", {jobs_[j]}), "C5", std::move(terms), Sense::ge, 0);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<Term> terms;
      for (std::size_t m = 0; m < nm_; ++m) {
        for (std::size_t t = 0; t < slots; ++t) terms.push_back({s.z(j, m, t), 1});
      }
      terms.push_back({s.c(j), -1});
      terms.push_back({s.b(j), 1});
      add(tag("C7", {jobs_[j]}), "C7", std::move(terms), Sense::eq, 0);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        std::vector<Term> terms;
        for (std::size_t t = 0; t < slots; ++t) terms.push_back({s.z(j, m, t), 1});
        terms.push_back({s.x(j, m), -big_m_});
        add(tag("C8", {jobs_[j], machines_[m]}), "C8", std::move(terms), Sense::le, 0);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t t = 0; t < slots; ++t) {
        std::vector<Term> terms{{s.c(j), 1}};
        for (std::size_t m = 0; m < nm_; ++m) {
          terms.push_back({s.z(j, m, t), -static_cast<double>(t + 1)});
        }
        add(tag("C9", {jobs_[j], std::to_string(t)}), "C9", std::move(terms), Sense::ge, 0);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t t = 0; t < slots; ++t) {
        std::vector<Term> terms{{s.b(j), 1}};
        for (std::size_t m = 0; m < nm_; ++m) {
          terms.push_back({s.z(j, m, t), big_m_ - static_cast<double>(t)});
        }
        add(tag("C10", {jobs_[j], std::to_string(t)}), "C10", std::move(terms), Sense::le,
            big_m_);
      }
    }
    for (std::size_t m = 0; m < nm_; ++m) {
      for (std::size_t t = 0; t < slots; ++t) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < n_; ++j) {
          terms.push_back({s.z(j, m, t), static_cast<double>(instance_.jobs[j].qubits)});
        }
        add(tag("C11", {machines_[m], std::to_string(t)}), "C11", std::move(terms), Sense::le,
            instance_.machines[m].capacity);
      }
    }
  }

  // C5 (max form), C5b-C5d, C6 and C12-C20 with their exactness companions.
  void add_successor_constraints() {
    const auto& s = model_.space;
    const double n = static_cast<double>(n_);
    auto c_of = [&](PredIndex i) { return i == kDummy ? s.c0() : s.c(i - 1); };

    for (std::size_t j = 0; j < n_; ++j) {
      for (PredIndex i = 0; i <= n_; ++i) {
        if (i == pred_of(j)) continue;
        std::vector<Term> terms{{s.c(j), 1}, {s.b(j), -1}};
        for (std::size_t m = 0; m < nm_; ++m) terms.push_back({s.x(j, m), -1.0 * p_slots(j, m)});
        for (std::size_t m = 0; m < nm_; ++m) {
          terms.push_back({s.y(i, j, m), -1.0 * s_slots(i, j, m)});
        }
        add(tag("C5", {pred_token(i), jobs_[j]}), "C5", std::move(terms), Sense::ge, 0);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<Term> upper{{s.c(j), 1}, {s.b(j), -1}};
      std::vector<Term> pick;
      for (std::size_t m = 0; m < nm_; ++m) upper.push_back({s.x(j, m), -1.0 * p_slots(j, m)});
      for (PredIndex i = 0; i <= n_; ++i) {
        if (i == pred_of(j)) continue;
        for (std::size_t m = 0; m < nm_; ++m) {
          upper.push_back({s.w(i, j, m), -1.0 * s_slots(i, j, m)});
          pick.push_back({s.w(i, j, m), 1});
        }
      }
      add(tag("C5b", {jobs_[j]}), "C5b", std::move(upper), Sense::le, 0);
      add(tag("C5c", {jobs_[j]}), "C5c", std::move(pick), Sense::eq, 1);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (PredIndex i = 0; i <= n_; ++i) {
        if (i == pred_of(j)) continue;
        for (std::size_t m = 0; m < nm_; ++m) {
          add(tag("C5d", {pred_token(i), jobs_[j], machines_[m]}), "C5d",
              {{s.w(i, j, m), 1}, {s.y(i, j, m), -1}}, Sense::le, 0);
        }
      }
    }
    // C6: b_j >= c_i + M (sum_m y_ijm - 1)
    for (std::size_t j = 0; j < n_; ++j) {
      for (PredIndex i = 0; i <= n_; ++i) {
        if (i == pred_of(j)) continue;
        std::vector<Term> terms{{s.b(j), 1}, {c_of(i), -1}};
        for (std::size_t m = 0; m < nm_; ++m) terms.push_back({s.y(i, j, m), -big_m_});
        add(tag("C6", {pred_token(i), jobs_[j]}), "C6", std::move(terms), Sense::ge, -big_m_);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<Term> terms;
      for (PredIndex i = 0; i <= n_; ++i) {
        if (i == pred_of(j)) continue;
        for (std::size_t m = 0; m < nm_; ++m) terms.push_back({s.y(i, j, m), 1});
      }
      add(tag("C12", {jobs_[j]}), "C12", std::move(terms), Sense::ge, 1);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        std::vector<Term> in, out;
        for (PredIndex i = 0; i <= n_; ++i) {
          if (i != pred_of(j)) in.push_back({s.y(i, j, m), 1});
        }
        for (std::size_t k = 0; k < n_; ++k) {
          if (k != j) out.push_back({s.y(pred_of(j), k, m), 1});
        }
        in.push_back({s.x(j, m), -big_m_});
        out.push_back({s.x(j, m), -big_m_});
        add(tag("C13", {jobs_[j], machines_[m]}), "C13", std::move(in), Sense::le, 0);
        add(tag("C14", {jobs_[j], machines_[m]}), "C14", std::move(out), Sense::le, 0);
      }
    }
    // C15: jobs running in slot 0 follow the dummy; C15b/C15c: the dummy is a
    // predecessor exactly when no job on the machine completed before.
    const double others = std::max(1.0, n - 1.0);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < nm_; ++m) {
        add(tag("C15", {jobs_[j], machines_[m]}), "C15",
            {{s.y(kDummy, j, m), 1}, {s.z(j, m, 0), -1}}, Sense::ge, 0);
        std::vector<Term> lower{{s.y(kDummy, j, m), 1}, {s.x(j, m), -1}};
        std::vector<Term> exclusive{{s.y(kDummy, j, m), others}};
        for (std::size_t k = 0; k < n_; ++k) {
          if (k == j) continue;
          lower.push_back({s.y(pred_of(k), j, m), 1});
          exclusive.push_back({s.y(pred_of(k), j, m), 1});
        }
        add(tag("C15b", {jobs_[j], machines_[m]}), "C15b", std::move(lower), Sense::ge, 0);
        add(tag("C15c", {jobs_[j], machines_[m]}), "C15c", std::move(exclusive), Sense::le,
            others);
      }
    }
    // alpha_ij = [c_i <= b_j], beta_ij = [c_i < c_j] on integral slot times.
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const auto a = s.alpha(i, j);
        const auto bt = s.beta(i, j);
        add(tag("C16", {jobs_[i], jobs_[j]}), "C16",
            {{a, big_m_}, {s.b(j), -1}, {s.c(i), 1}}, Sense::ge, 1);
        add(tag("C16b", {jobs_[i], jobs_[j]}), "C16b",
            {{s.c(i), 1}, {s.b(j), -1}, {a, big_m_}}, Sense::le, big_m_);
        add(tag("C17", {jobs_[i], jobs_[j]}), "C17",
            {{bt, big_m_}, {s.c(j), -1}, {s.c(i), 1}}, Sense::ge, 0);
        add(tag("C17b", {jobs_[i], jobs_[j]}), "C17b",
            {{s.c(i), 1}, {s.c(j), -1}, {bt, big_m_}}, Sense::le, big_m_ - 1);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        for (std::size_t m = 0; m < nm_; ++m) {
          const auto g = s.gamma(i, j, m);
          add(tag("C18", {jobs_[i], jobs_[j], machines_[m]}), "C18",
              {{g, 1}, {s.x(i, m), -1}, {s.x(j, m), -1}}, Sense::ge, -1);
          add(tag("C18b", {jobs_[i], jobs_[j], machines_[m]}), "C18b",
              {{g, 1}, {s.x(i, m), -1}}, Sense::le, 0);
          add(tag("C18c", {jobs_[i], jobs_[j], machines_[m]}), "C18c",
              {{g, 1}, {s.x(j, m), -1}}, Sense::le, 0);
        }
      }
    }
    // delta_ijkm = [k on m completes after i and no later than b_j].
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        for (std::size_t k = 0; k < n_; ++k) {
          for (std::size_t m = 0; m < nm_; ++m) {
            const auto d = s.delta(i, j, k, m);
            std::string name = tag("C19", {jobs_[i], jobs_[j], jobs_[k], machines_[m]});
            if (k == i || k == j) {
              add(std::move(name), "C19", {{d, 1}}, Sense::eq, 0);
              continue;
            }
            add(std::move(name), "C19",
                {{d, 1},
                 {s.alpha(k, j), -1},
                 {s.beta(i, k), -1},
                 {s.gamma(i, j, m), -1},
                 {s.gamma(i, k, m), -1}},
                Sense::ge, -3);
            add(tag("C19b", {jobs_[i], jobs_[j], jobs_[k], machines_[m]}), "C19b",
                {{d, 3}, {s.alpha(k, j), -1}, {s.beta(i, k), -1}, {s.gamma(i, k, m), -1}},
                Sense::le, 0);
          }
        }
      }
    }
    const double blockers = std::max(1.0, n - 2.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        for (std::size_t m = 0; m < nm_; ++m) {
          const auto y = s.y(pred_of(i), j, m);
          std::vector<Term> lower{{y, 1}, {s.alpha(i, j), -1}, {s.gamma(i, j, m), -1}};
          std::vector<Term> blocked{{y, blockers}};
          for (std::size_t k = 0; k < n_; ++k) {
            lower.push_back({s.delta(i, j, k, m), 1});
            if (k != i && k != j) blocked.push_back({s.delta(i, j, k, m), 1});
          }
          add(tag("C20", {jobs_[i], jobs_[j], machines_[m]}), "C20", std::move(lower), Sense::ge,
              -1);
          add(tag("C20b", {jobs_[i], jobs_[j], machines_[m]}), "C20b",
              {{y, 2}, {s.alpha(i, j), -1}, {s.gamma(i, j, m), -1}}, Sense::le, 0);
          add(tag("C20c", {jobs_[i], jobs_[j], machines_[m]}), "C20c", std::move(blocked),
              Sense::le, blockers);
        }
      }
    }
  }

  MilpModel finish() {
    auto& stats = model_.stats;
    stats.num_variables = model_.variables.size();
    stats.num_constraints = model_.constraints.size();
    for (const auto& c : model_.constraints) ++stats.constraints_by_label[c.label];
    return std::move(model_);
  }

  const Instance& instance_;
  std::size_t n_, nm_;
  double big_m_ = 1000.0;
  MilpModel model_;
  std::vector<std::string> jobs_, machines_;
};

}  // namespace

MilpModel build_extended(const Instance& instance) {
  return ModelBuilder(instance, ModelMode::extended).build_extended();
}

MilpModel build_simple(const Instance& instance, const JobSetupTable& job_setup) {
  return ModelBuilder(instance, ModelMode::simple).build_simple(job_setup);
}

}  // namespace milq
