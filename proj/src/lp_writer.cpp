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

#include <cmath>
#include <string>

#include "milq/milp.hpp"

namespace milq {
namespace {

// Terms per output line; keeps lines well under the 255-char limit of
// older LP readers for typical names.
constexpr std::size_t kTermsPerLine = 6;

void append_term(std::string& out, const Term& term, const MilpModel& model, bool first) {
  const std::string& name = model.variables[term.var].name;
  double coef = term.coef;
  if (coef < 0) {
    out += first ? "- " : " - ";
    coef = -coef;
  } else if (!first) {
    out += " + ";
  }
  if (coef != 1.0) {
    out += format_time(coef);
    out += ' ';
  }
  out += name;
}

const char* sense_text(Sense sense) {
  switch (sense) {
    case Sense::le:
      return " <= ";
    case Sense::ge:
      return " >= ";
    case Sense::eq:
      return " = ";
  }
  return " = ";
}

}  // namespace

std::string serialize_lp(const MilpModel& model) {
  std::string out;
  out.reserve(model.constraints.size() * 64);
  out += "\\ milq ";
  out += to_string(model.mode);
  out += " model: ";
  out += std::to_string(model.stats.num_variables);
  out += " variables, ";
  out += std::to_string(model.stats.num_constraints);
  out += " constraints\n";
  out += "Minimize\n obj: ";
  out += model.variables[model.space.cmax()].name;
  out += "\nSubject To\n";

  for (const auto& c : model.constraints) {
    out += ' ';
    out += c.name;
    out += ": ";
    if (c.terms.empty()) {
      out += "0 ";
      out += model.variables[model.space.cmax()].name;
    }
    for (std::size_t t = 0; t < c.terms.size(); ++t) {
      if (t > 0 && t % kTermsPerLine == 0) out += "\n  ";
      append_term(out, c.terms[t], model, t == 0);
    }
    out += sense_text(c.sense);
    out += format_time(c.rhs);
    out += '\n';
  }

  out += "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::binary) {
      if (v.upper == 0.0) out += " " + v.name + " = 0\n";
      continue;
    }
    const bool finite_upper = std::isfinite(v.upper);
    if (finite_upper && v.lower == v.upper) {
      out += " " + v.name + " = " + format_time(v.lower) + "\n";
    } else if (v.lower != 0.0 && finite_upper) {
      out += " " + format_time(v.lower) + " <= " + v.name + " <= " + format_time(v.upper) + "\n";
    } else if (finite_upper) {
      out += " " + v.name + " <= " + format_time(v.upper) + "\n";
    } else if (v.lower != 0.0) {
      out += " " + v.name + " >= " + format_time(v.lower) + "\n";
    }
  }

  out += "Binaries\n";
  std::size_t on_line = 0;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::binary) continue;
    out += ' ';
    out += v.name;
    if (++on_line == 8) {
      out += '\n';
      on_line = 0;
    }
  }
  if (on_line != 0) out += '\n';
  out += "End\n";
  return out;
}

}  // namespace milq
