#!/usr/bin/env python3
# Copyright 2026 The pogo-codesign Authors
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
"""Recompute aggregate.csv and summary.csv from the per-seed logs.

Independent of the C++ reduction: numpy population statistics over the
seed_<s>.csv files named in the aggregate metadata.
"""
import csv
import pathlib
import sys

import numpy as np

TOL = 1e-12


def metadata(path):
    first = path.open().readline().split()
    return dict(kv.split("=", 1) for kv in first[3:])


def table(path):
    with path.open() as f:
        f.readline()
        return list(csv.DictReader(f))


def close(a, b):
    return abs(a - b) <= TOL * max(1.0, abs(a), abs(b))


def main(run_dir):
    run = pathlib.Path(run_dir)
    meta = metadata(run / "aggregate.csv")
    seeds = [s for s in meta["seeds"].split(";") if s]
    logs = [table(run / f"seed_{s}.csv") for s in seeds]
    agg = table(run / "aggregate.csv")
    bad = 0

    for col, name in (("apex", "apex"), ("reward", "reward"), ("alpha", "alpha"), ("zeta", "zeta")):
        data = np.array([[float(r[col]) for r in log] for log in logs])
        mean, std = data.mean(axis=0), data.std(axis=0)
        for e, row in enumerate(agg):
            for want, key in ((mean[e], f"{name}_mean"), (std[e], f"{name}_std")):
                if not close(want, float(row[key])):
                    print(f"episode {e} {key}: aggregate {row[key]} vs recomputed {want!r}")
                    bad += 1

    finals = {"final_alpha": [], "final_zeta": [], "final_apex": []}
    for s in seeds:
        m = metadata(run / f"seed_{s}.csv")
        for k in finals:
            finals[k].append(float(m[k]))
    summary = {r["quantity"]: r for r in table(run / "summary.csv")}
    for k, v in finals.items():
        v = np.array(v)
        for want, key in ((v.mean(), "mean"), (v.std(), "std")):
            if not close(want, float(summary[k][key])):
                print(f"{k} {key}: summary {summary[k][key]} vs recomputed {want!r}")
                bad += 1

    print(f"checked {len(agg)} episodes x {len(seeds)} seeds: {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
