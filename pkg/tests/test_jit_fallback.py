"""The pure-Python kernel path must give the same answers as the compiled one."""

import json
import os
import subprocess
import sys

import numpy as np

from perturbed_ramsey import JIT_ENABLED, kernels

PROBE = r"""
import json
from fractions import Fraction
from perturbed_ramsey import _jit, m_star, decide_ramsey, complete, cycle
from perturbed_ramsey.perturbation import Seed, make_host, sample_perturbed
from perturbed_ramsey.densities import m_k_parts
out = {"jit": _jit.JIT_ENABLED,
       "mstar": [str(m_star(r, complete(t), 2).value) for r, t in [(3, 3), (3, 5), (4, 4)]],
       "parts": str(m_k_parts(cycle(5), 2))}
host = make_host("kpartite", 16, 2)
out["ramsey"] = [decide_ramsey(sample_perturbed(host, Fraction(3, 5), Seed(1, s)).union,
                               [complete(3), complete(3)]).status for s in range(6)]
print(json.dumps(out))
"""


def probe(no_jit: bool):
    env = dict(os.environ, PERTURBED_RAMSEY_NO_JIT="1" if no_jit else "0")
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_fallback_matches_compiled():
    fast, slow = probe(False), probe(True)
    assert slow["jit"] is False
    assert fast["jit"] == JIT_ENABLED
    fast.pop("jit"), slow.pop("jit")
    assert fast == slow


def test_kernel_helpers():
    assert kernels.popcount(np.int64(0b101101)) == 4
    assert kernels.lowbit_index(np.int64(0b1000)) == 3
    assert kernels.bits_above(0) == kernels.FULL ^ 1
    counts = kernels.subset_edge_counts(np.array([0b110, 0b101, 0b011], np.int64))
    assert counts.tolist() == [0, 0, 0, 1, 0, 1, 1, 3]
