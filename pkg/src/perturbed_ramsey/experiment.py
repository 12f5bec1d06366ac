"""Seeded Monte Carlo threshold scans over a grid of p-exponents.

Trial ``t`` draws one uniform per vertex pair from stream ``t`` of the
master seed and thresholds it at every grid point, so the random graphs of
one trial are nested edge-wise and its Ramsey indicators are monotone in p.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from statistics import NormalDist
from typing import Sequence

import numpy as np

from . import __version__
from .densities import beta, fmt_fraction, m_star
from .graph import Graph
from .graphio import parse_graph
from .perturbation import (
    GENERATOR_VERSION,
    Seed,
    edge_probability,
    graph_from_pair_mask,
    make_host,
    pair_uniforms,
    union,
)
from .ramsey import DEFAULT_BUDGET, decide_ramsey

UNRELIABLE_UNKNOWN_SHARE = 0.2
CSV_COLUMNS = ("a_num", "a_den", "p", "n", "trials", "ramsey", "non_ramsey", "unknown")
_Z95 = NormalDist().inv_cdf(0.975)


class ConfigError(ValueError):
    pass


def parse_exponent(x) -> Fraction | None:
    """Rational p-exponent; ``"inf"`` (p = 0) maps to None."""
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity")):
        return None
    try:
        return Fraction(str(x).strip()) if not isinstance(x, Fraction) else x
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad exponent {x!r}") from exc


def fmt_exponent(a: Fraction | None) -> str:
    return "inf" if a is None else fmt_fraction(a)


def thread_cap(requested: int) -> int:
    cap = os.environ.get("RAMSEY_THREADS")
    width = max(1, int(requested))
    if cap:
        try:
            width = min(width, max(1, int(cap)))
        except ValueError as exc:
            raise ConfigError(f"RAMSEY_THREADS must be an integer, got {cap!r}") from exc
    return width


@dataclass(frozen=True)
class ScanConfig:
    host_kind: str = "kpartite"
    n: int = 24
    k: int = 2
    f: str = "K3"
    h: str = "K3"
    grid: tuple[Fraction | None, ...] = (Fraction(8, 5), Fraction(1), Fraction(3, 5))
    trials: int = 200
    seed: int = 20240601
    budget: int = DEFAULT_BUDGET
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(parse_exponent(a) for a in self.grid))
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.budget < 1:
            raise ConfigError("budget must be positive")
        keys = [math.inf if a is None else a for a in self.grid]
        if any(x <= y for x, y in zip(keys, keys[1:])):
            raise ConfigError("grid must be strictly decreasing in a")
        if any(a is not None and a < 0 for a in self.grid):
            raise ConfigError("exponents must be nonnegative")
        self.patterns  # parse early

    @property
    def patterns(self) -> tuple[Graph, Graph]:
        try:
            return parse_graph(self.f), parse_graph(self.h)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def host(self) -> Graph:
        try:
            return make_host(self.host_kind, self.n, self.k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self) -> dict:
        out = asdict(self)
        out["grid"] = [fmt_exponent(a) for a in self.grid]
        return out

    @classmethod
    def from_json(cls, data: dict, **overrides) -> "ScanConfig":
        data = dict(data)
        host = data.pop("host", None)
        if isinstance(host, dict):
            data.setdefault("host_kind", host.get("kind", "kpartite"))
            for key in ("n", "k"):
                if key in host:
                    data.setdefault(key, host[key])
        data.update({k: v for k, v in overrides.items() if v is not None})
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        if "grid" in data:
            data["grid"] = tuple(data["grid"])
        return cls(**data)


@dataclass
class ScanRow:
    a: Fraction | None
    p: float
    n: int
    trials: int
    ramsey: int
    non_ramsey: int
    unknown: int
    wall_time: float = 0.0

    @property
    def decided(self) -> int:
        return self.ramsey + self.non_ramsey

    @property
    def fraction(self) -> float | None:
        return self.ramsey / self.decided if self.decided else None

    @property
    def unreliable(self) -> bool:
        return self.unknown > UNRELIABLE_UNKNOWN_SHARE * self.trials

    def interval(self) -> tuple[float, float] | None:
        return wilson_interval(self.ramsey, self.decided)


def wilson_interval(successes: int, total: int, z: float = _Z95) -> tuple[float, float] | None:
    if total == 0:
        return None
    phat = successes / total
    denom = 1 + z * z / total
    centre = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class ScanResult:
    config: ScanConfig
    rows: list[ScanRow]
    predicted_mstar: Fraction | None
    predicted_source: str
    indicators: list[list[str]] = field(default_factory=list)
    version: str = __version__

    @property
    def predicted_exponent(self) -> Fraction | None:
        """Predicted threshold exponent ``a = 1/m*`` (None when m* is 0 or unknown)."""
        if not self.predicted_mstar:
            return None
        return 1 / self.predicted_mstar

    def monotonicity_violations(self) -> int:
        """Trials whose decided indicators drop as p increases."""
        bad = 0
        for trial in self.indicators:
            seen_ramsey = False
            for status in trial:
                if status == "ramsey":
                    seen_ramsey = True
                elif status == "not_ramsey" and seen_ramsey:
                    bad += 1
                    break
        return bad

    @property
    def unknown_dominated(self) -> bool:
        return any(row.unreliable for row in self.rows)

    def to_json(self) -> dict:
        rows = []
        for row in self.rows:
            ci = row.interval()
            rows.append({
                "a": fmt_exponent(row.a), "p": row.p, "n": row.n, "trials": row.trials,
                "ramsey": row.ramsey, "non_ramsey": row.non_ramsey, "unknown": row.unknown,
                "fraction": row.fraction, "wilson95": None if ci is None else list(ci),
                "unreliable": row.unreliable, "wall_time": row.wall_time,
            })
        return {
            "config": self.config.to_json(),
            "rows": rows,
            "predicted_mstar": None if self.predicted_mstar is None else fmt_fraction(self.predicted_mstar),
            "predicted_exponent": fmt_exponent(self.predicted_exponent) if self.predicted_exponent else None,
            "predicted_source": self.predicted_source,
            "seed": self.config.seed,
            "generator": GENERATOR_VERSION,
            "version": self.version,
            "indicators": self.indicators,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ScanResult":
        cfg = ScanConfig.from_json(data["config"])
        rows = [ScanRow(parse_exponent(r["a"]), float(r["p"]), int(r["n"]), int(r["trials"]),
                        int(r["ramsey"]), int(r["non_ramsey"]), int(r["unknown"]), float(r.get("wall_time", 0.0)))
                for r in data["rows"]]
        mstar = data.get("predicted_mstar")
        return cls(cfg, rows, None if mstar is None else Fraction(mstar), data.get("predicted_source", ""),
                   data.get("indicators", []), data.get("version", __version__))


def predicted_threshold(cfg: ScanConfig) -> tuple[Fraction | None, str]:
    """m* for the configured host and patterns, when the library can compute it."""
    f, h = cfg.patterns
    if cfg.host_kind == "empty":
        return beta(f, h), "beta"
    if f.is_complete and f.n >= 1 and h.n <= 8:
        return m_star(f.n, h, cfg.k).value, "m_star"
    if f.n <= 8 and h.n <= 8:
        from .bounds import upper_bound_partial
        return upper_bound_partial(f, h, cfg.k).value, "upper_bound_partial"
    return None, "none"


def _trial(cfg: ScanConfig, host: Graph, patterns, probs: Sequence[float], t: int) -> tuple[list[str], list[float]]:
    u = pair_uniforms(cfg.n, Seed(cfg.seed, t))
    out, times = [], []
    for p in probs:
        start = time.perf_counter()
        g = union(host, graph_from_pair_mask(cfg.n, u < p))
        out.append(decide_ramsey(g, patterns, cfg.budget).status)
        times.append(time.perf_counter() - start)
    return out, times


def run_scan(cfg: ScanConfig) -> ScanResult:
    host = cfg.host()
    patterns = cfg.patterns
    probs = [edge_probability(cfg.n, a) for a in cfg.grid]
    width = thread_cap(cfg.threads)
    work = lambda t: _trial(cfg, host, patterns, probs, t)
    if width == 1:
        results = [work(t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=width) as pool:
            results = list(pool.map(work, range(cfg.trials)))
    indicators = [r[0] for r in results]
    rows = []
    for j, (a, p) in enumerate(zip(cfg.grid, probs)):
        col = [ind[j] for ind in indicators]
        rows.append(ScanRow(a, p, cfg.n, cfg.trials, col.count("ramsey"), col.count("not_ramsey"),
                            col.count("unknown"), sum(r[1][j] for r in results)))
    mstar, source = predicted_threshold(cfg)
    return ScanResult(cfg, rows, mstar, source, indicators)


# ---------------------------------------------------------------------------
# reports


def _csv(res: ScanResult) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in res.rows:
        # a = inf is written as 1/0
        num, den = (1, 0) if row.a is None else (row.a.numerator, row.a.denominator)
        w.writerow([num, den, repr(row.p), row.n, row.trials, row.ramsey, row.non_ramsey, row.unknown])
    return buf.getvalue().encode()


def _svg(res: ScanResult) -> bytes:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "perturbed-ramsey", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        pts = [(float(r.a), r.fraction, r.interval()) for r in res.rows if r.a is not None and r.fraction is not None]
        if pts:
            xs = np.array([x for x, _, _ in pts])
            ys = np.array([y for _, y, _ in pts])
            lo = np.maximum(ys - np.array([ci[0] for _, _, ci in pts]), 0.0)
            hi = np.maximum(np.array([ci[1] for _, _, ci in pts]) - ys, 0.0)
            ax.step(xs, ys, where="mid", color="0.6")
            ax.errorbar(xs, ys, yerr=[lo, hi], fmt="o", color="C0", capsize=3)
        a_star = res.predicted_exponent
        if a_star is not None:
            ax.axvline(float(a_star), color="C3", linestyle="--", label=f"a = {fmt_fraction(a_star)}")
            ax.legend(loc="best")
        ax.set_xlabel("a   (p = n^-a)")
        ax.set_ylabel("Ramsey fraction")
        ax.set_ylim(-0.05, 1.05)
        ax.invert_xaxis()
        ax.set_title(f"{res.config.f} vs {res.config.h}, {res.config.host_kind} n={res.config.n} k={res.config.k}")
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def emit_report(res: ScanResult, fmt: str) -> bytes:
    if fmt == "csv":
        return _csv(res)
    if fmt == "json":
        return (json.dumps(res.to_json(), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "svg":
        return _svg(res)
    raise ValueError(f"unknown report format {fmt!r}")
