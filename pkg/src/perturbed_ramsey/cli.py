"""Command-line front end (``pramsey``).

Exit codes: 0 success, 1 domain error, 2 parse/usage error, 3 result
dominated by budget-exhausted (unknown) decisions.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .densities import (
    DensityError,
    beta,
    clique_threshold_formula,
    density_table,
    fmt_fraction,
    kreuter_exponent,
    m1_density,
    m_density,
    m_k_parts_certificate,
    m_star,
    mk_density,
    phi_exponent,
)
from .graph import GraphError, members
from .graphio import parse_graph, parse_graph_list, write_graph

EXIT_UNKNOWN = 3


def _graph(text: str | None, name: str):
    if text is None:
        raise click.UsageError(f"--{name} is required")
    try:
        return parse_graph(text)
    except (GraphError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint=f"--{name}") from exc


def _fraction(text: str | None, name: str) -> Fraction:
    if text is None:
        raise click.UsageError(f"--{name} is required")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational: {text!r}", param_hint=f"--{name}") from exc


def _need(value, name: str):
    if value is None:
        raise click.UsageError(f"--{name} is required")
    return value


def _load_json(text: str, name: str):
    """Inline JSON or a path to a JSON file."""
    try:
        path = Path(text)
        if path.exists():
            return json.loads(path.read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.BadParameter(f"cannot read JSON: {exc}", param_hint=f"--{name}") from exc


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True))


def _emit_value(value: Fraction, certificate: dict) -> None:
    click.echo(fmt_fraction(value))
    click.echo(f"{float(value):.12g}")
    _emit_json(certificate)


def _argmax_subset(g, key, min_size: int):
    t = density_table(g)
    best_s, best_v = None, None
    for s in range(1, t.size):
        if t.card[s] < min_size:
            continue
        v = key(t, s)
        if v is not None and (best_v is None or v > best_v):
            best_s, best_v = s, v
    return [] if best_s is None else members(best_s)


def _domain(func):
    """Turn library domain errors into a clean exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DensityError, ValueError) as exc:
            if isinstance(exc, click.ClickException):
                raise
            raise click.ClickException(str(exc)) from exc
    return wrapper


@click.group()
@click.version_option(__version__, prog_name="pramsey")
def main():
    """Vertex-Ramsey thresholds of randomly perturbed graphs."""


# --------------------------------------------------------------------------- density

DENSITY_KINDS = ("m", "m1", "mk", "beta", "mkparts", "mstar", "phi", "clique", "kreuter")


@main.command()
@click.argument("kind", type=click.Choice(DENSITY_KINDS))
@click.option("--f", "f_text", help="first graph (F)")
@click.option("--h", "h_text", help="second graph (H)")
@click.option("--r", type=int, help="clique size for mstar")
@click.option("--k", type=int, help="number of parts")
@click.option("--a", "a_text", help="p-exponent for phi")
@click.option("--s", type=int, help="smaller clique for the closed form")
@click.option("--t", type=int, help="larger clique for the closed form")
@click.option("--graphs", help="comma-separated graphs for kreuter, ascending m1")
@click.option("--no-prune", is_flag=True, help="disable symmetry pruning in mstar")
@_domain
def density(kind, f_text, h_text, r, k, a_text, s, t, graphs, no_prune):
    """Exact density parameter KIND; prints fraction, decimal, certificate JSON."""
    if kind == "m":
        h = _graph(h_text, "h")
        val = m_density(h)
        wit = _argmax_subset(h, lambda tb, x: Fraction(tb.e[x], tb.card[x]), 1)
        _emit_value(val, {"kind": "m", "value": fmt_fraction(val), "subgraph": wit})
    elif kind == "m1":
        h = _graph(h_text, "h")
        val = m1_density(h)
        wit = _argmax_subset(h, lambda tb, x: Fraction(tb.e[x], tb.card[x] - 1), 2) if val else []
        _emit_value(val, {"kind": "m1", "value": fmt_fraction(val), "subgraph": wit})
    elif kind == "mk":
        f, h = _graph(f_text, "f"), _graph(h_text, "h")
        val = mk_density(f, h)
        c = density_table(f).m1[f.vertices]
        wit = _argmax_subset(h, lambda tb, x: (c + tb.e[x]) / tb.card[x], 2)
        _emit_value(val, {"kind": "mk", "value": fmt_fraction(val), "subgraph": wit})
    elif kind == "beta":
        f, h = _graph(f_text, "f"), _graph(h_text, "h")
        val = beta(f, h)
        _emit_value(val, {"kind": "beta", "value": fmt_fraction(val),
                          "f": write_graph(f), "h": write_graph(h)})
    elif kind == "mkparts":
        h = _graph(h_text, "h")
        val, part = m_k_parts_certificate(h, _need(k, "k"))
        _emit_value(val, {"kind": "mkparts", "value": fmt_fraction(val),
                          "partition": [members(p) for p in part]})
    elif kind == "mstar":
        h = _graph(h_text, "h")
        cert = m_star(_need(r, "r"), h, _need(k, "k"), prune=not no_prune)
        _emit_value(cert.value, {"kind": "mstar", **cert.to_json()})
    elif kind == "phi":
        h = _graph(h_text, "h")
        val = phi_exponent(h, _fraction(a_text, "a"))
        _emit_value(val, {"kind": "phi", "value": fmt_fraction(val), "a": a_text})
    elif kind == "clique":
        te = clique_threshold_formula(_need(s, "s"), _need(t, "t"))
        _emit_value(te.value, {"kind": "clique", "value": fmt_fraction(te.value), "case": te.case,
                               "flagged": te.flagged, "note": te.note, "threshold": te.describe()})
    elif kind == "kreuter":
        try:
            gs = parse_graph_list(_need(graphs, "graphs"))
        except (GraphError, ValueError) as exc:
            raise click.BadParameter(str(exc), param_hint="--graphs") from exc
        te = kreuter_exponent(gs)
        _emit_value(te.value, {"kind": "kreuter", "value": fmt_fraction(te.value), "threshold": te.describe()})


# --------------------------------------------------------------------------- ramsey


@main.group()
def ramsey():
    """Exact vertex-Ramsey decisions."""


@ramsey.command("decide")
@click.option("--host", "host_text", required=True, help="host graph (token, edge list or graph6)")
@click.option("--patterns", required=True, help="comma-separated patterns, one per colour")
@click.option("--budget", type=int, default=None, help="search node budget")
@_domain
def ramsey_decide(host_text, patterns, budget):
    """Decide whether every colouring of HOST has a monochromatic pattern."""
    from .ramsey import DEFAULT_BUDGET, decide_ramsey

    g = _graph(host_text, "host")
    try:
        pats = parse_graph_list(patterns)
    except (GraphError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint="--patterns") from exc
    verdict = decide_ramsey(g, pats, budget or DEFAULT_BUDGET)
    _emit_json(verdict.to_json())
    if verdict.status == "unknown":
        sys.exit(EXIT_UNKNOWN)


# --------------------------------------------------------------------------- sample


def _host_spec(text: str):
    """``kpartite:n=30,k=2`` / ``empty:n=20`` or any graph text."""
    from .perturbation import make_host

    kind, _, rest = text.partition(":")
    if kind in ("kpartite", "empty"):
        params = {}
        for item in filter(None, rest.split(",")):
            key, _, val = item.partition("=")
            try:
                params[key.strip()] = int(val)
            except ValueError as exc:
                raise click.BadParameter(f"bad host parameter {item!r}", param_hint="--host") from exc
        if "n" not in params:
            raise click.BadParameter("host spec needs n=", param_hint="--host")
        try:
            return make_host(kind, params["n"], params.get("k", 2))
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--host") from exc
    return _graph(text, "host")


@main.command()
@click.option("--host", "host_text", required=True, help="kpartite:n=..,k=.. | empty:n=.. | graph")
@click.option("--a", "a_text", required=True, help="p-exponent (p = n^-a) or 'inf'")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stream", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="write instance JSON here")
@_domain
def sample(host_text, a_text, seed, stream, out):
    """Sample a perturbed instance host + G(n, n^-a)."""
    from .experiment import parse_exponent, ConfigError
    from .perturbation import Seed, sample_perturbed

    host = _host_spec(host_text)
    try:
        a = parse_exponent(a_text)
    except ConfigError as exc:
        raise click.BadParameter(str(exc), param_hint="--a") from exc
    inst = sample_perturbed(host, a, Seed(seed, stream))
    text = json.dumps(inst.to_json(), sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _instance(text: str):
    from .perturbation import PerturbedInstance

    data = _load_json(text, "instance")
    try:
        return PerturbedInstance.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise click.BadParameter(f"malformed instance: {exc}", param_hint="--instance") from exc


# --------------------------------------------------------------------------- colour / find


@main.group()
def colour():
    """Avoiding colourings on complete multipartite hosts."""


@colour.command("zero")
@click.option("--instance", "inst_text", required=True, help="instance JSON (file or inline)")
@click.option("--r", type=int, required=True)
@click.option("--h", "h_text", required=True)
@click.option("--k", type=int, required=True)
@click.option("--budget", type=int, default=None)
@_domain
def colour_zero(inst_text, r, h_text, k, budget):
    """Build a colouring with no red K_r and no blue H."""
    from .constructions import build_zero_colouring
    from .ramsey import DEFAULT_BUDGET

    res = build_zero_colouring(_instance(inst_text), r, _graph(h_text, "h"), k, budget or DEFAULT_BUDGET)
    _emit_json(res.to_json())
    if res.status == "unknown":
        sys.exit(EXIT_UNKNOWN)


@main.group()
def find():
    """Monochromatic structure finder on complete multipartite hosts."""


@find.command("one")
@click.option("--instance", "inst_text", required=True)
@click.option("--colouring", "col_text", required=True, help="JSON list of 0 (red) / 1 (blue), or a file")
@click.option("--r", type=int, required=True)
@click.option("--h", "h_text", required=True)
@_domain
def find_one(inst_text, col_text, r, h_text):
    """Find a red K_r or a blue H in a given colouring."""
    from .constructions import find_monochromatic

    data = _load_json(col_text, "colouring")
    if isinstance(data, dict):
        data = data.get("witness") or data.get("colouring")
    if not isinstance(data, list):
        raise click.BadParameter("expected a JSON list", param_hint="--colouring")
    res = find_monochromatic(_instance(inst_text), [int(c) for c in data], r, _graph(h_text, "h"))
    _emit_json(res.to_json())


# --------------------------------------------------------------------------- bounds


@main.command()
@click.argument("kind", type=click.Choice(("partial", "extension", "best-extension", "cover")))
@click.option("--f", "f_text", required=True)
@click.option("--h", "h_text", required=True)
@click.option("--k", type=int, required=True)
@click.option("--rule", default="lowest", show_default=True, help="built-in rule name or rule JSON")
@click.option("--cover", "cover_text", help="cover JSON {'families': [[tokens], ...]} (file or inline)")
@_domain
def bounds(kind, f_text, h_text, k, rule, cover_text):
    """Bounds on m*(F,H;k) for a general pattern F."""
    from . import bounds as b

    f, h = _graph(f_text, "f"), _graph(h_text, "h")
    if kind == "partial":
        cert = b.upper_bound_partial(f, h, k)
    elif kind == "extension":
        if rule in ("lowest", "lowest-index-in-W", "greedy", "greedy-min-beta"):
            ext = b.ExtensionRule.named(rule, f, h, k)
        else:
            ext = b.ExtensionRule.from_json(_load_json(rule, "rule"), f, k)
        cert = b.upper_bound_extension(f, h, k, ext)
    elif kind == "best-extension":
        value, ext = b.best_extension_rule(f, h, k)
        _emit_value(value, {"kind": "best-extension", "value": fmt_fraction(value), "rule": ext.to_json()})
        return
    else:
        if cover_text is None:
            raise click.UsageError("--cover is required for cover bounds")
        try:
            cover = b.KCover.from_json(_load_json(cover_text, "cover"))
        except (GraphError, KeyError, TypeError, ValueError) as exc:
            raise click.BadParameter(f"malformed cover: {exc}", param_hint="--cover") from exc
        cert = b.lower_bound_cover(f, h, k, cover)
    _emit_value(cert.value, {"kind": kind, **cert.to_json()})


# --------------------------------------------------------------------------- scan / report


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="JSON config file")
@click.option("--host-kind", type=click.Choice(("kpartite", "empty")))
@click.option("--n", type=int)
@click.option("--k", type=int)
@click.option("--f", "f_text")
@click.option("--h", "h_text")
@click.option("--grid", help="comma-separated exponents, strictly decreasing (e.g. 8/5,1,3/5)")
@click.option("--trials", type=int)
@click.option("--seed", type=int)
@click.option("--budget", type=int)
@click.option("--threads", type=int)
@click.option("--format", "fmt", type=click.Choice(("csv", "json", "svg")), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def scan(config_path, host_kind, n, k, f_text, h_text, grid, trials, seed, budget, threads, fmt, out):
    """Monte Carlo threshold scan; flags override the config file."""
    from .experiment import ConfigError, ScanConfig, emit_report, run_scan

    base = {}
    if config_path:
        try:
            base = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise click.BadParameter(str(exc), param_hint="--config") from exc
    overrides = dict(host_kind=host_kind, n=n, k=k, f=f_text, h=h_text, trials=trials, seed=seed,
                     budget=budget, threads=threads,
                     grid=None if grid is None else [g for g in grid.split(",") if g.strip()])
    try:
        cfg = ScanConfig.from_json(base, **overrides)
    except (ConfigError, TypeError) as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        res = run_scan(cfg)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    _write(emit_report(res, fmt), out)
    if res.unknown_dominated:
        click.echo("warning: some rows have more than 20% unknown decisions", err=True)
        sys.exit(EXIT_UNKNOWN)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="scan result JSON")
@click.option("--format", "fmt", type=click.Choice(("csv", "json", "svg")), default="svg", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def report(input_path, fmt, out):
    """Re-emit a saved scan result as CSV, JSON or SVG."""
    from .experiment import ScanResult, emit_report

    try:
        res = ScanResult.from_json(json.loads(Path(input_path).read_text()))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise click.BadParameter(f"malformed scan result: {exc}", param_hint="--input") from exc
    _write(emit_report(res, fmt), out)


if __name__ == "__main__":
    main()
