"""Command-line front end: ``schmidt-loci <command>``.

Exit status is 0 on success and 2 on invalid input.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import asdict
from pathlib import Path

import click

from .bounds import BoundReport, analyze, optimal_generic_bound, theorem1_case_bounds
from .errors import InvalidInputError
from .experiments import example3_subspace, export_summary, run_generic_experiment
from .locus import DEFAULT_PROBE, ProbeConfig
from .states import coefficient_matrix, range_basis, schmidt_rank
from .statefile import SCHEMAS, encode_matrix, parse_state_file

EXIT_INVALID = 2


def report_to_dict(rep: BoundReport) -> dict:
    return {
        "m": rep.m, "n": rep.n, "r": rep.r,
        "certified_bound": rep.certified_bound,
        "exact_bound": rep.exact_bound,
        "provenance": rep.provenance,
        "chain": [dict(asdict(c), verdict=c.verdict.value) for c in rep.chain],
        "generic_t": rep.generic_t,
        "generic_bound": rep.generic_bound,
        "policy": asdict(rep.policy),
        "config": asdict(rep.config),
    }


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvalidInputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
    return wrapper


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_state_file(data)


def _emit(doc: dict):
    click.echo(json.dumps(doc, indent=2))


@click.group()
def main():
    """Schmidt-number lower bounds from degenerating loci of bipartite states."""


@main.command("analyze")
@click.argument("file", type=click.Path())
@click.option("--t", "t", type=int, default=None, help="Probe only this t (locus level k = m - t).")
@click.option("--samples", type=int, default=DEFAULT_PROBE.samples, show_default=True)
@click.option("--restarts", type=int, default=DEFAULT_PROBE.restarts, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_PROBE.seed, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print a machine-readable report.")
@_guard
def analyze_cmd(file, t, samples, restarts, seed, as_json):
    """Certify a Schmidt-number lower bound for the state in FILE."""
    e = _load(file)
    cfg = ProbeConfig(samples=samples, restarts=restarts, seed=seed)
    rep = analyze(e, cfg, t=t)
    if as_json:
        _emit(report_to_dict(rep))
        return
    click.echo(f"state: {rep.m}x{rep.n}, rank {rep.r}")
    for c in rep.chain:
        tail = f" -> bound {c.bound}" if c.bound is not None else ""
        click.echo(f"  t={c.t} k={c.k} side={c.side}: {c.verdict.value} "
                   f"(evidence {c.evidence:.3g}, min rank found {c.min_rank_found}){tail}")
    click.echo(f"certified Schmidt number >= {rep.certified_bound} ({rep.provenance})")
    if rep.exact_bound != rep.certified_bound:
        click.echo(f"exactly certified Schmidt number >= {rep.exact_bound}")
    click.echo(f"generic prediction for this rank: >= {rep.generic_bound} (t*={rep.generic_t})")


@main.command("generic")
@click.option("--m", "m", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guard
def generic_cmd(m, r, as_json):
    """Generic Schmidt-number bounds for rank-r states on C^m x C^m."""
    if m < 2 or r < 1:
        raise InvalidInputError("need m >= 2 and r >= 1")
    t_star, bound = optimal_generic_bound(m, r)
    cases = theorem1_case_bounds(m, r)
    if as_json:
        _emit({"m": m, "r": r, "t_star": t_star, "bound": bound, "cases": [asdict(c) for c in cases]})
        return
    for c in cases:
        flag = "applies" if c.applicable else "n/a"
        value = "-" if c.bound is None else c.bound
        click.echo(f"case {c.case}: {flag:8s} bound {value}")
    click.echo(f"optimal t = {t_star}, bound {bound}")


@main.command("schmidt")
@click.argument("file", type=click.Path())
@click.option("--json", "as_json", is_flag=True)
@_guard
def schmidt_cmd(file, as_json):
    """Schmidt rank of the pure state in FILE."""
    e = _load(file)
    basis = range_basis(e)
    if len(basis) != 1:
        raise InvalidInputError(f"state has rank {len(basis)}; a pure state is required")
    info = schmidt_rank(basis[0])
    if as_json:
        _emit({"m": e.m, "n": e.n, "schmidt_rank": info.rank,
               "singular_values": [float(x) for x in info.singular_values]})
        return
    click.echo(f"Schmidt rank {info.rank}")
    click.echo("singular values: " + " ".join(f"{x:.6g}" for x in info.singular_values))


@main.command("experiment")
@click.option("--m", "m", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--target", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=DEFAULT_PROBE.samples, show_default=True)
@click.option("--restarts", type=int, default=DEFAULT_PROBE.restarts, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Write records (.csv or .json).")
@click.option("--json", "as_json", is_flag=True)
@_guard
def experiment_cmd(m, r, trials, target, seed, samples, restarts, out, as_json):
    """Certify bounds on random rank-r states and report the success fraction."""
    cfg = ProbeConfig(samples=samples, restarts=restarts)
    summary = run_generic_experiment(m, r, trials, target, cfg, seed)
    if out:
        fmt = "json" if out.endswith(".json") else "csv"
        Path(out).write_bytes(export_summary(summary, fmt))
    if as_json:
        click.echo(export_summary(summary, "json").decode())
        return
    click.echo(f"m={m} r={r} trials={trials} target={target}: "
               f"success fraction {summary.success_fraction:.3f}")
    if out:
        click.echo(f"wrote {out}")


@main.command("example3")
@click.option("--a", type=complex, required=True)
@click.option("--b", type=complex, required=True)
@click.option("--c", type=complex, required=True)
@click.option("--d", type=complex, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guard
def example3_cmd(a, b, c, d, as_json):
    """Product vectors spanning the complement of a|11>+b|12>+c|21>+d|22>."""
    *vs, checks = example3_subspace(a, b, c, d)
    if as_json:
        _emit({"vectors": [encode_matrix(coefficient_matrix(v)) for v in vs],
               "schmidt_ranks": list(checks.schmidt_ranks), "span_rank": checks.span_rank,
               "orthogonality_residuals": list(checks.orthogonality_residuals),
               "passed": checks.passed})
        return
    for i, v in enumerate(vs, 1):
        click.echo(f"v{i} = {v.amplitudes.round(6).tolist()}")
    click.echo(f"Schmidt ranks {checks.schmidt_ranks}, span rank {checks.span_rank}, "
               f"max residual {max(checks.orthogonality_residuals):.2e}: "
               f"{'pass' if checks.passed else 'FAIL'}")


@main.command("schema")
@click.argument("name", type=click.Choice(sorted(SCHEMAS)))
def schema_cmd(name):
    """Print the JSON schema for a file format or --json output."""
    _emit(SCHEMAS[name])


if __name__ == "__main__":
    main()
