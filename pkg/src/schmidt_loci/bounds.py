"""Schmidt-number lower bounds from empty degenerating loci.

If V_A^{m-t}(rho) is empty for a rank-r state on C^m (x) C^m, its Schmidt
number is at least m / (r - m + t); bounds are reported rounded up since
Schmidt numbers are integers.  The generic table uses the codimension
count t (r - m + t) >= m for the rank-(m - t) locus of an m x r pencil.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .errors import InvalidInputError, UnsupportedConfigurationError
from .linalg import DEFAULT_POLICY, RankPolicy
from .locus import (DEFAULT_PROBE, EmptinessCertificate, ProbeConfig, Verdict,
                    family_of, locus_empty, v0_empty_exact)
from .states import EnsembleState, range_basis


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def theorem2_bound(m: int, r: int, t: int) -> int:
    """ceil(m / (r - m + t)), the bound implied by an empty V^{m-t}."""
    if not 1 <= t <= m:
        raise InvalidInputError(f"t={t} must lie in [1, m={m}]")
    d = r - m + t
    if d < 1:
        raise InvalidInputError(f"r - m + t = {d} must be >= 1")
    return _ceil_div(m, d)


def generic_t_condition(m: int, r: int, t: int) -> bool:
    """True when V^{m-t} is empty for generic rank-r states (expected codimension >= m)."""
    return t * (r - m + t) >= m


def optimal_generic_bound(m: int, r: int) -> tuple[int | None, int]:
    """Smallest admissible t meeting the codimension condition, and its bound."""
    for t in range(max(1, m - r + 1), m + 1):
        if generic_t_condition(m, r, t):
            return t, theorem2_bound(m, r, t)
    return None, 1


@dataclass(frozen=True)
class CaseBound:
    case: int
    applicable: bool
    bound: int | None  # None where the case formula is undefined


def theorem1_case_bounds(m: int, r: int) -> list[CaseBound]:
    """The four generic rank cases; [x] is the integer part, case 2 rounded up."""
    s = isqrt(m)
    d2 = r - m + s + 1
    return [
        CaseBound(1, r <= m, s - 1),
        CaseBound(2, r > m, _ceil_div(m, d2) if d2 >= 1 else None),
        CaseBound(3, 2 * r <= 3 * m - 10 and r > m >= 169, 3),
        CaseBound(4, r <= 2 * m - 3, 2),
    ]


@dataclass(frozen=True)
class ChainEntry:
    t: int
    k: int
    side: str
    verdict: Verdict
    evidence: float
    min_rank_found: int
    bound: int | None  # contribution when the locus is empty

    @classmethod
    def from_certificate(cls, t: int, m: int, r: int, cert: EmptinessCertificate) -> "ChainEntry":
        bound = theorem2_bound(m, r, t) if cert.is_empty else None
        return cls(t, cert.k, cert.side, cert.verdict, float(cert.evidence), cert.min_rank_found, bound)


@dataclass(frozen=True)
class BoundReport:
    m: int
    n: int
    r: int
    certified_bound: int
    exact_bound: int
    chain: tuple[ChainEntry, ...]
    generic_t: int | None
    generic_bound: int
    policy: RankPolicy = field(default=DEFAULT_POLICY)
    config: ProbeConfig = field(default=DEFAULT_PROBE)

    @property
    def provenance(self) -> str:
        if self.certified_bound <= 1:
            return "none"
        return "exact" if self.exact_bound == self.certified_bound else "probabilistic"


def analyze(e: EnsembleState, cfg: ProbeConfig = DEFAULT_PROBE, policy: RankPolicy | None = None,
            t: int | None = None, sides: tuple[str, ...] = ("A", "B")) -> BoundReport:
    """Certify a Schmidt-number lower bound for ``e``.

    The k = 0 loci (t = m) are decided exactly on each requested side.
    Then V_A^{m-t} is probed for t from the generic threshold upward,
    stopping at the first empty locus or once no larger t can improve the
    bound already held.  Passing ``t`` probes only that level.
    """
    if e.m != e.n:
        raise UnsupportedConfigurationError(f"bounds need m == n, got {e.m}x{e.n}")
    policy = policy or e.policy
    m = e.m
    r = len(range_basis(e, policy))
    chain: list[ChainEntry] = []

    def best() -> int:
        return max([1] + [c.bound for c in chain if c.bound is not None])

    if t is not None and not (1 <= t <= m and r - m + t >= 1):
        raise InvalidInputError(f"t={t} needs 1 <= t <= m and r - m + t >= 1 (m={m}, r={r})")

    if t is None or t == m:
        for side in sides:
            chain.append(ChainEntry.from_certificate(m, m, r, v0_empty_exact(e, policy, side)))
    exact = best()

    generic_t, generic_bound = optimal_generic_bound(m, r)
    if r >= 2 * m - 2:
        generic_bound = 1

    if t is not None:
        levels = [t] if t < m else []
    elif generic_t is None:
        levels = []
    else:
        levels = range(max(generic_t, m - r + 1), m)
    f = family_of(e, policy) if levels else None
    for tt in levels:
        if t is None and theorem2_bound(m, r, tt) <= best():
            break
        cert = locus_empty(f, m - tt, cfg, policy)
        chain.append(ChainEntry.from_certificate(tt, m, r, cert))
        if cert.is_empty:
            break

    return BoundReport(m, e.n, r, best(), exact, tuple(chain), generic_t, generic_bound, policy, cfg)
