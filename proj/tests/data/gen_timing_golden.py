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

"""Regenerates timing_seed7.json without touching the C++ code.

Stream: mt19937_64 seeded with splitmix64(seed ^ fnv1a(table_name)),
uniform01 = (next >> 11) * 2**-53, u = f * (2 * uniform01 - 1).
"""

import json
import math

MASK = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.index = 312

    def next(self):
        if self.index >= 312:
            for i in range(312):
                x = (self.mt[i] & 0xFFFFFFFF80000000) | (self.mt[(i + 1) % 312] & 0x7FFFFFFF)
                xa = x >> 1
                if x & 1:
                    xa ^= 0xB5026F5AA96619E9
                self.mt[i] = self.mt[(i + 156) % 312] ^ xa
            self.index = 0
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK


def fnv1a(s):
    h = 0xCBF29CE484222325
    for c in s.encode():
        h ^= c
        h = (h * 0x100000001B3) & MASK
    return h


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def stream(seed, table):
    return MT19937_64(splitmix64(seed ^ fnv1a(table)))


def variation(rng, f):
    return f * (2.0 * ((rng.next() >> 11) * 2.0**-53) - 1.0)


def finish(v, integer, floor_value):
    return max(floor_value, math.ceil(v - 1e-9)) if integer else v


def main():
    seed, qubits, machines = 7, [2, 3, 5], 2
    f, p_scale, s_scale = 0.25, 1.0, 0.5
    out = {"seed": seed, "qubits": qubits, "machines": machines}
    for integer in (True, False):
        rng = stream(seed, "processing")
        proc = [[finish(p_scale * q * (1 + variation(rng, f)), integer, 1.0)
                 for _ in range(machines)] for q in qubits]
        rng = stream(seed, "setup")
        setup = []
        for qi in [0] + qubits:
            setup.append([[finish(s_scale * (qi + qj) / 2 * (1 + variation(rng, f)), integer, 0.0)
                           for _ in range(machines)] for qj in qubits])
        key = "integer" if integer else "real"
        out[key] = {"processing": proc, "setup": setup}
    with open("timing_seed7.json", "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
