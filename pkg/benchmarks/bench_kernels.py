"""Compiled vs pure-Python kernel timings.

Each workload runs in a fresh interpreter, once with the compiled kernels
and once with PERTURBED_RAMSEY_NO_JIT=1. The compiled column excludes
compilation (one warm-up call first); results are checked for equality.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from fractions import Fraction
from perturbed_ramsey import _jit
from perturbed_ramsey.graph import complete, cycle, contains_copy
from perturbed_ramsey.densities import MStarSolver
from perturbed_ramsey.perturbation import Seed, make_host, sample_perturbed
from perturbed_ramsey.ramsey import decide_ramsey

name, repeat, quick = sys.argv[1], int(sys.argv[2]), sys.argv[3] == "1"
trials = 10 if quick else 40
K3 = complete(3)

def minimax():
    return str(MStarSolver(4, cycle(6) if quick else complete(7), 3).best.value)

def decide():
    host = make_host("kpartite", 24, 2)
    return [decide_ramsey(sample_perturbed(host, Fraction(3, 5), Seed(1, s)).union, [K3, K3]).status
            for s in range(trials)]

def embed():
    host = sample_perturbed(make_host("empty", 40), Fraction(1, 2), Seed(3)).union
    return [contains_copy(host, complete(t)) for t in (3, 4, 5)] + [contains_copy(host, cycle(6))]

work = {"minimax": minimax, "decide": decide, "embed": embed}[name]
if _jit.JIT_ENABLED:
    work()  # compile
best = float("inf")
for _ in range(repeat):
    t = time.perf_counter()
    out = work()
    best = min(best, time.perf_counter() - t)
print(json.dumps({"jit": _jit.JIT_ENABLED, "seconds": best, "result": repr(out)}))
"""


def run(name: str, repeat: int, quick: bool, no_jit: bool) -> dict:
    env = dict(os.environ, PERTURBED_RAMSEY_NO_JIT="1" if no_jit else "0")
    proc = subprocess.run([sys.executable, "-c", WORKER, name, str(repeat), "1" if quick else "0"],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    print(f"{'workload':<10} {'numba [s]':>10} {'python [s]':>11} {'speedup':>8}  same")
    status = 0
    for name in ("minimax", "decide", "embed"):
        fast = run(name, args.repeat, args.quick, no_jit=False)
        slow = run(name, 1, args.quick, no_jit=True)
        same = fast["result"] == slow["result"]
        status |= not same
        label = f"{fast['seconds']:10.4f}" if fast["jit"] else f"{'n/a':>10}"
        print(f"{name:<10} {label} {slow['seconds']:11.4f} {slow['seconds'] / fast['seconds']:8.1f}  {same}")
    return status


if __name__ == "__main__":
    sys.exit(main())
