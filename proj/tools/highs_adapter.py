#!/usr/bin/env python3
# Copyright 2026 The milq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solve an LP-format model with HiGHS and write a milq solution file.

Usage: highs_adapter.py MODEL.lp SOLUTION.txt [--gap G] [--time-limit S]
                        [--start START.txt] [--option NAME=VALUE ...]

Solution format: "status <s>", "objective <v>", "gap <g>" header lines
followed by one "name value" line per nonzero variable.
"""

import argparse
import math
import sys

import highspy


def read_start(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if len(parts) == 2:
                values[parts[0]] = float(parts[1])
    return values


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("model")
    parser.add_argument("solution")
    parser.add_argument("--gap", type=float, default=0.2)
    parser.add_argument("--time-limit", type=float, default=60.0)
    parser.add_argument("--start", default="")
    parser.add_argument("--option", action="append", default=[],
                        help="extra HiGHS option, NAME=VALUE")
    args = parser.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("random_seed", 0)
    h.setOptionValue("mip_rel_gap", max(args.gap, 0.0))
    h.setOptionValue("mip_abs_gap", 1e-9 if args.gap <= 0 else 1e-6)
    if args.time_limit > 0:
        h.setOptionValue("time_limit", args.time_limit)
    for item in args.option:
        name, _, text = item.partition("=")
        value = text
        for cast in (int, float):
            try:
                value = cast(text)
                break
            except ValueError:
                pass
        if text in ("true", "false"):
            value = text == "true"
        if h.setOptionValue(name, value) != highspy.HighsStatus.kOk:
            print(f"bad HiGHS option {item}", file=sys.stderr)
            return 1
    if h.readModel(args.model) != highspy.HighsStatus.kOk:
        print(f"cannot read model {args.model}", file=sys.stderr)
        return 1

    lp = h.getLp()
    names = list(lp.col_names_)
    if args.start:
        start = read_start(args.start)
        sol = highspy.HighsSolution()
        sol.col_value = [start.get(name, 0.0) for name in names]
        sol.value_valid = True
        h.setSolution(sol)

    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    has_solution = info.primal_solution_status == 2
    MS = highspy.HighsModelStatus
    if status == MS.kOptimal:
        gap = info.mip_gap if lp.integrality_ else 0.0
        if not math.isfinite(gap) or gap <= 1e-9:
            label, gap = "optimal", 0.0
        else:
            label = "gap_terminated"
    elif status in (MS.kInfeasible, MS.kUnboundedOrInfeasible):
        label, gap = "infeasible", float("inf")
        has_solution = False
    elif status in (MS.kTimeLimit, MS.kIterationLimit, MS.kSolutionLimit, MS.kInterrupt):
        label, gap = "timeout", info.mip_gap
    else:
        print(f"solver ended with {h.modelStatusToString(status)}", file=sys.stderr)
        return 1

    lines = [f"status {label}"]
    if has_solution:
        lines.append(f"objective {info.objective_function_value!r}")
        lines.append(f"gap {gap!r}" if math.isfinite(gap) else "gap inf")
        values = h.getSolution().col_value
        for name, value in zip(names, values):
            value = round(value, 9)
            if value != 0.0:
                lines.append(f"{name} {value!r}")
    else:
        lines.append("gap inf")
    with open(args.solution, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
