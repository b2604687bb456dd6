"""Random-state experiments and the 2x2 product-span construction."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .bounds import analyze
from .errors import InvalidInputError
from .linalg import numerical_rank
from .locus import DEFAULT_PROBE, ProbeConfig
from .states import PureState, random_rank_r_state, schmidt_rank

CSV_COLUMNS = ("trial_index", "seed", "certified_bound", "probed_t", "min_rank_found", "elapsed_ms")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    seed: int
    certified_bound: int
    probed_t: tuple[int, ...]
    min_rank_found: tuple[int, ...]
    elapsed_ms: float


@dataclass(frozen=True)
class ExperimentSummary:
    m: int
    r: int
    trials: int
    target_bound: int
    seed: int
    records: tuple[TrialRecord, ...]
    config: ProbeConfig = field(default=DEFAULT_PROBE)

    @property
    def success_fraction(self) -> float:
        if not self.records:
            return 0.0
        return sum(rec.certified_bound >= self.target_bound for rec in self.records) / len(self.records)

    def without_timings(self) -> "ExperimentSummary":
        return replace(self, records=tuple(replace(rec, elapsed_ms=0.0) for rec in self.records))


def trial_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),)).generate_state(1)[0])


def run_trial(m: int, r: int, index: int, seed: int, cfg: ProbeConfig) -> TrialRecord:
    s = trial_seed(seed, index)
    start = time.perf_counter()
    e = random_rank_r_state(m, m, r, s)
    report = analyze(e, replace(cfg, seed=s), sides=("A",))
    elapsed = (time.perf_counter() - start) * 1e3
    return TrialRecord(index, s, report.certified_bound,
                       tuple(c.t for c in report.chain),
                       tuple(c.min_rank_found for c in report.chain),
                       elapsed)


def run_generic_experiment(m: int, r: int, trials: int, target_bound: int,
                           cfg: ProbeConfig = DEFAULT_PROBE, seed: int = 0) -> ExperimentSummary:
    """Analyze ``trials`` random rank-r states on C^m (x) C^m.

    Each trial derives its own seed from (seed, index), so the summary does
    not depend on execution order.
    """
    if m < 2:
        raise InvalidInputError("m must be >= 2")
    if not 1 <= r <= 2 * m - 3:
        raise InvalidInputError(f"r={r} must lie in [1, 2m-3={2 * m - 3}]")
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    if target_bound < 1:
        raise InvalidInputError("target_bound must be >= 1")
    records = tuple(run_trial(m, r, i, seed, cfg) for i in range(trials))
    return ExperimentSummary(m, r, trials, target_bound, seed, records, cfg)


def _join(xs) -> str:
    return ";".join(str(x) for x in xs)


def _split(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(";")) if s else ()


def export_summary(s: ExperimentSummary, fmt: str = "csv") -> bytes:
    """Serialize to CSV (one row per trial, lists joined by ';') or JSON."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in s.records:
            w.writerow([rec.trial_index, rec.seed, rec.certified_bound,
                        _join(rec.probed_t), _join(rec.min_rank_found), repr(float(rec.elapsed_ms))])
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "m": s.m, "r": s.r, "trials": s.trials, "target_bound": s.target_bound, "seed": s.seed,
            "success_fraction": s.success_fraction,
            "config": asdict(s.config),
            "records": [dict(asdict(rec), probed_t=list(rec.probed_t),
                             min_rank_found=list(rec.min_rank_found)) for rec in s.records],
        }
        return json.dumps(doc, indent=2).encode()
    raise InvalidInputError(f"unknown format {fmt!r}; use 'csv' or 'json'")


def records_from_csv(data: bytes) -> tuple[TrialRecord, ...]:
    rows = csv.DictReader(io.StringIO(data.decode()))
    return tuple(
        TrialRecord(int(row["trial_index"]), int(row["seed"]), int(row["certified_bound"]),
                    _split(row["probed_t"]), _split(row["min_rank_found"]), float(row["elapsed_ms"]))
        for row in rows
    )


def summary_from_json(data: bytes) -> ExperimentSummary:
    doc = json.loads(data)
    records = tuple(
        TrialRecord(rec["trial_index"], rec["seed"], rec["certified_bound"],
                    tuple(rec["probed_t"]), tuple(rec["min_rank_found"]), float(rec["elapsed_ms"]))
        for rec in doc["records"]
    )
    return ExperimentSummary(doc["m"], doc["r"], doc["trials"], doc["target_bound"], doc["seed"],
                             records, ProbeConfig(**doc["config"]))


DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Example3Checks:
    schmidt_ranks: tuple[int, int, int]
    span_rank: int
    orthogonality_residuals: tuple[float, float, float]

    @property
    def passed(self) -> bool:
        return (self.schmidt_ranks == (1, 1, 1) and self.span_rank == 3
                and max(self.orthogonality_residuals) < 1e-10)


def example3_subspace(a: complex, b: complex, c: complex, d: complex):
    """Three product vectors spanning the complement of a|11>+b|12>+c|21>+d|22>.

    "Orthogonal" is the bilinear pairing sum_i n_i v_i = 0; in the Hermitian
    inner product the span's normal is the conjugate vector.
    Returns ``(v1, v2, v3, checks)``.
    """
    if abs(d) <= DEGENERACY_TOL:
        raise InvalidInputError("degenerate parameters: d=0 (need d != 0 and ad != bc)")
    if abs(a * d - b * c) <= DEGENERACY_TOL:
        raise InvalidInputError("degenerate parameters: ad=bc (need d != 0 and ad != bc)")
    raw = [
        [[-c, 0], [a, 0]],
        [[0, -d], [0, b]],
        [[-(c + d), -(c + d)], [a + b, a + b]],
    ]
    vs = [PureState.from_matrix(np.array(M, dtype=complex), normalize=True) for M in raw]
    normal = np.array([a, b, c, d], dtype=complex)
    checks = Example3Checks(
        tuple(schmidt_rank(v).rank for v in vs),
        numerical_rank(np.column_stack([v.amplitudes for v in vs])),
        tuple(float(abs(normal @ v.amplitudes)) for v in vs),
    )
    return (*vs, checks)
