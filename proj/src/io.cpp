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

#include "milq/io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "milq/errors.hpp"

namespace milq {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, std::string_view text) {
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (!dir.empty() && !fs::exists(dir)) fs::create_directories(dir);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename into " + path);
  }
}

namespace {

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

// Integral values print without a fraction.
json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
    return static_cast<long long>(v);
  }
  return v;
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return field<T>(obj, key, where);
}

const json& list(const json& doc, const char* key, const char* what) {
  if (doc.is_array()) return doc;
  if (doc.is_object() && doc.contains(key) && doc.at(key).is_array()) return doc.at(key);
  throw InputError(std::string(what) + ": expected an array or an object with '" + key + "'");
}

CircuitJob job_from(const json& j, std::size_t k) {
  const std::string where = "jobs[" + std::to_string(k) + "]";
  CircuitJob job;
  job.id = field<std::string>(j, "id", where);
  job.qubits = field<int>(j, "qubits", where);
  job.depth = field_or<int>(j, "depth", 1, where);
  if (j.contains("origin") && !j.at("origin").is_null()) {
    const auto& o = j.at("origin");
    job.origin = CutOrigin{field<std::string>(o, "parent", where + ".origin"),
                           field<int>(o, "fragment", where + ".origin"),
                           field<int>(o, "variant", where + ".origin")};
  }
  if (job.qubits < 1) throw InputError(where + ": qubits must be >= 1");
  if (job.depth < 1) throw InputError(where + ": depth must be >= 1");
  return job;
}

json job_to(const CircuitJob& job) {
  json j{{"id", job.id}, {"qubits", job.qubits}, {"depth", job.depth}};
  if (job.origin) {
    j["origin"] = {{"parent", job.origin->parent},
                   {"fragment", job.origin->fragment},
                   {"variant", job.origin->variant}};
  }
  return j;
}

std::vector<Machine> machines_from(const json& arr) {
  std::vector<Machine> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "machines[" + std::to_string(k) + "]";
    Machine m{field<std::string>(arr[k], "id", where), field<int>(arr[k], "capacity", where)};
    if (m.capacity < 1) throw InputError(where + ": capacity must be >= 1");
    out.push_back(std::move(m));
  }
  return out;
}

double time_value(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  double d = v.get<double>();
  if (!(d >= 0) || !std::isfinite(d)) throw InputError(where + ": times must be finite and >= 0");
  return d;
}

}  // namespace

Instance instance_from_json(std::string_view text) {
  json doc = parse(text, "instance");
  if (!doc.is_object()) throw InputError("instance: expected an object");
  Instance inst;
  const auto& jobs = list(doc, "jobs", "instance");
  for (std::size_t k = 0; k < jobs.size(); ++k) inst.jobs.push_back(job_from(jobs[k], k));
  inst.machines = machines_from(list(doc, "machines", "instance"));
  inst.big_m = field_or<double>(doc, "big_m", inst.big_m, "instance");
  inst.t_max = field_or<int>(doc, "t_max", inst.t_max, "instance");
  inst.granularity = field_or<double>(doc, "granularity", inst.granularity, "instance");

  const std::size_t n = inst.jobs.size();
  const std::size_t nm = inst.machines.size();
  inst.timing = TimingTables(n, nm);
  auto job_at = [&](const std::string& id, const std::string& where) {
    auto j = inst.job_index(id);
    if (!j) throw InputError(where + ": unknown job '" + id + "'");
    return *j;
  };
  auto machine_at = [&](const std::string& id, const std::string& where) {
    auto m = inst.machine_index(id);
    if (!m) throw InputError(where + ": unknown machine '" + id + "'");
    return *m;
  };
  if (!doc.contains("timing")) throw InputError("instance: missing field 'timing'");
  const auto& timing = doc.at("timing");
  if (timing.contains("processing")) {
    for (const auto& [jid, row] : timing.at("processing").items()) {
      const std::string where = "timing.processing." + jid;
      const std::size_t j = job_at(jid, where);
      for (const auto& [mid, v] : row.items()) {
        inst.timing.processing(j, machine_at(mid, where)) = time_value(v, where + "." + mid);
      }
    }
  }
  if (timing.contains("setup")) {
    for (const auto& [pid, rows] : timing.at("setup").items()) {
      const std::string where = "timing.setup." + pid;
      const PredIndex i = pid == "0" ? kDummy : pred_of(job_at(pid, where));
      for (const auto& [jid, row] : rows.items()) {
        const std::size_t j = job_at(jid, where + "." + jid);
        for (const auto& [mid, v] : row.items()) {
          inst.timing.setup(i, j, machine_at(mid, where)) =
              time_value(v, where + "." + jid + "." + mid);
        }
      }
    }
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json jobs = json::array();
  for (const auto& j : inst.jobs) jobs.push_back(job_to(j));
  json machines = json::array();
  for (const auto& m : inst.machines) machines.push_back({{"id", m.id}, {"capacity", m.capacity}});
  json processing = json::object();
  json setup = json::object();
  const std::size_t n = inst.jobs.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < inst.machines.size(); ++m) {
      double p = inst.timing.processing(j, m);
      if (!std::isnan(p)) processing[inst.jobs[j].id][inst.machines[m].id] = number(p);
    }
  }
  for (PredIndex i = 0; i <= n; ++i) {
    const std::string pid = i == kDummy ? "0" : inst.jobs[i - 1].id;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == pred_of(j)) continue;
      for (std::size_t m = 0; m < inst.machines.size(); ++m) {
        double s = inst.timing.setup(i, j, m);
        if (!std::isnan(s)) setup[pid][inst.jobs[j].id][inst.machines[m].id] = number(s);
      }
    }
  }
  json doc{{"schema", "milq-instance/1"},
           {"jobs", jobs},
           {"machines", machines},
           {"timing", {{"processing", processing}, {"setup", setup}}},
           {"big_m", number(inst.big_m)},
           {"t_max", inst.t_max},
           {"granularity", number(inst.granularity)}};
  return doc.dump(2) + "\n";
}

Schedule schedule_from_json(std::string_view text, const Instance& instance) {
  json doc = parse(text, "schedule");
  Schedule s;
  const auto& entries = list(doc, "entries", "schedule");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const auto& e = entries[k];
    auto job = instance.job_index(field<std::string>(e, "job", where));
    auto machine = instance.machine_index(field<std::string>(e, "machine", where));
    if (!job || !machine) throw InputError(where + ": unknown job or machine");
    s.entries.push_back({*job, *machine, field<double>(e, "start", where),
                         field<double>(e, "completion", where)});
  }
  Time latest = 0;
  for (const auto& e : s.entries) latest = std::max(latest, e.completion);
  s.makespan = field_or<double>(doc, "makespan", latest, "schedule");
  return s;
}

std::string schedule_to_json(const Schedule& schedule, const Instance& instance) {
  json entries = json::array();
  for (const auto& e : schedule.entries) {
    entries.push_back({{"job", instance.jobs.at(e.job).id},
                       {"machine", instance.machines.at(e.machine).id},
                       {"start", number(e.start)},
                       {"completion", number(e.completion)}});
  }
  json doc{{"schema", "milq-schedule/1"},
           {"entries", entries},
           {"makespan", number(schedule.makespan)}};
  return doc.dump(2) + "\n";
}

std::vector<CircuitSpec> circuits_from_json(std::string_view text) {
  json doc = parse(text, "circuits");
  const auto& arr = list(doc, "circuits", "circuits");
  std::vector<CircuitSpec> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "circuits[" + std::to_string(k) + "]";
    CircuitSpec c{field<std::string>(arr[k], "id", where), field<int>(arr[k], "width", where),
                  field_or<int>(arr[k], "depth", 1, where)};
    if (c.width < 1 || c.depth < 1) throw InputError(where + ": width and depth must be >= 1");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Machine> machines_from_json(std::string_view text) {
  json doc = parse(text, "machines");
  return machines_from(list(doc, "machines", "machines"));
}

std::vector<CircuitJob> jobs_from_json(std::string_view text) {
  json doc = parse(text, "jobs");
  const auto& arr = list(doc, "jobs", "jobs");
  std::vector<CircuitJob> out;
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(job_from(arr[k], k));
  return out;
}

std::string jobs_to_json(const std::vector<CircuitJob>& jobs) {
  json arr = json::array();
  for (const auto& j : jobs) arr.push_back(job_to(j));
  json doc{{"schema", "milq-jobs/1"}, {"jobs", arr}};
  return doc.dump(2) + "\n";
}

std::string manifest_to_json(const std::vector<ManifestGroup>& manifest) {
  json doc = json::object();
  for (const auto& group : manifest) {
    json arr = json::array();
    for (const auto& e : group.entries) {
      arr.push_back({{"job_id", e.job_id},
                     {"fragment_index", e.fragment_index},
                     {"variant_index", e.variant_index},
                     {"width", e.width}});
    }
    doc[group.circuit] = std::move(arr);
  }
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
  json doc = parse(text, "scenario");
  if (!doc.is_object()) throw InputError("scenario: expected an object");
  Scenario s;
  const std::string where = "scenario";
  s.name = field<std::string>(doc, "name", where);
  s.machines = machines_from(list(doc, "machines", "scenario"));
  s.batches = field_or<int>(doc, "batches", s.batches, where);
  s.batch_size = field_or<int>(doc, "batch_size", s.batch_size, where);
  s.min_width = field_or<int>(doc, "min_width", s.min_width, where);
  s.min_depth = field_or<int>(doc, "min_depth", s.min_depth, where);
  s.max_depth = field_or<int>(doc, "max_depth", s.max_depth, where);
  s.t_max_factor = field_or<double>(doc, "t_max_factor", s.t_max_factor, where);
  s.granularity = field_or<double>(doc, "granularity", s.granularity, where);
  if (doc.contains("timing")) {
    const auto& t = doc.at("timing");
    const std::string tw = "scenario.timing";
    s.timing.seed = field_or<std::uint64_t>(t, "seed", s.timing.seed, tw);
    std::string mode = field_or<std::string>(t, "mode", "integer", tw);
    if (mode == "integer" || mode == "int") {
      s.timing.mode = TimeMode::integer;
    } else if (mode == "real") {
      s.timing.mode = TimeMode::real;
    } else {
      throw InputError(tw + ": mode must be integer or real");
    }
    s.timing.base_processing_scale =
        field_or<double>(t, "base_processing_scale", s.timing.base_processing_scale, tw);
    s.timing.variation_fraction =
        field_or<double>(t, "variation_fraction", s.timing.variation_fraction, tw);
    s.timing.setup_scale = field_or<double>(t, "setup_scale", s.timing.setup_scale, tw);
    s.timing.depth_multiplier = field_or<bool>(t, "depth_multiplier", false, tw);
    s.timing.dummy_qubits = field_or<double>(t, "dummy_qubits", 0.0, tw);
  }
  check_scenario(s);
  return s;
}

}  // namespace milq
