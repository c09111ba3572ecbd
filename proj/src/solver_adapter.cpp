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

#include "milq/solver_adapter.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "milq/errors.hpp"

namespace milq {
namespace fs = std::filesystem;

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void replace_all(std::string& text, const std::string& key, const std::string& value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos;
       pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
}

// Removes the scratch directory on scope exit.
struct ScratchDir {
  fs::path path;
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "milq-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw SolverFailure("cannot create scratch directory");
    path = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw SolverFailure("cannot write " + path.string());
}

}  // namespace

std::optional<std::string> resolve_solver_command(const std::optional<std::string>& explicit_cmd) {
  if (explicit_cmd && !blank(*explicit_cmd)) return explicit_cmd;
  if (const char* env = std::getenv(kSolverEnv); env != nullptr && !blank(env)) {
    return std::string(env);
  }
  return std::nullopt;
}

std::string expand_command(const std::string& tmpl, const std::string& lp_path,
                           const std::string& sol_path, double gap, double time_limit,
                           const std::string& start_path) {
  std::string cmd = tmpl;
  replace_all(cmd, "{lp}", shell_quote(lp_path));
  replace_all(cmd, "{sol}", shell_quote(sol_path));
  replace_all(cmd, "{gap}", format_time(gap));
  replace_all(cmd, "{time_limit}", format_time(time_limit));
  replace_all(cmd, "{start}", start_path.empty() ? "''" : shell_quote(start_path));
  return cmd;
}

MilpSolution run_solver(const MilpModel& model, const SolverOptions& options,
                        const std::vector<double>* start) {
  auto tmpl = resolve_solver_command(options.command);
  if (!tmpl) {
    throw SolverUnavailable(std::string("no solver configured (pass --solver-cmd or set ") +
                            kSolverEnv + ")");
  }
  ScratchDir dir;
  const fs::path lp = dir.path / "model.lp";
  const fs::path sol = dir.path / "model.sol";
  fs::path start_path;
  write_file(lp, serialize_lp(model));
  if (start != nullptr) {
    start_path = dir.path / "start.txt";
    write_file(start_path, format_assignment(model, *start));
  }
  std::string cmd = expand_command(*tmpl, lp.string(), sol.string(), options.gap,
                                   options.time_limit, start_path.string());
  int rc = std::system(cmd.c_str());
  if (rc == -1) throw SolverFailure("cannot launch solver command");
  if (WIFEXITED(rc) && WEXITSTATUS(rc) == 127) {
    throw SolverFailure("solver command not found: " + *tmpl);
  }
  if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
    throw SolverFailure("solver exited with status " +
                        std::to_string(WIFEXITED(rc) ? WEXITSTATUS(rc) : rc));
  }
  std::ifstream in(sol, std::ios::binary);
  if (!in) throw SolverFailure("solver wrote no solution file");
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_solution(text.str(), model);
  } catch (const InputError& e) {
    throw SolverFailure(std::string("unreadable solution: ") + e.what());
  }
}

}  // namespace milq
