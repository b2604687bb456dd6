"""Degenerating loci of a bipartite state and their emptiness.

A range basis v_1..v_s of rho is sliced into m blocks B_w (n x s) with
``B_w[j, l] = a^l_{wj}``.  For a direction r in CP^{m-1} the pencil
``C(r) = sum_w r_w B_w`` has column l equal to ``(A^l)^T r``, and

    V_A^k(rho) = { r : rank C(r) <= k }.

Emptiness at k = 0 is decided exactly (it is a plain rank condition on
the m x (n s) matrix ``[A^1 | ... | A^s]``).  For k >= 1 the locus is
probed: random directions seed an alternating minimization of
``sum_{j>k} sigma_j(C(r))^2`` over unit r, which drives r onto the locus
whenever a nearby point of it exists.  Not finding one is evidence, not
proof, and certificates say so.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, ShapeError
from .linalg import DEFAULT_POLICY, RankPolicy, numerical_rank, substream, complex_gaussian
from .states import EnsembleState, coefficient_matrix, range_basis, swap_parties

_SAMPLE_STREAM = 0
_RESTART_STREAM = 1


@dataclass(frozen=True, eq=False)
class BlockFamily:
    m: int
    n: int
    s: int
    blocks: np.ndarray  # shape (m, n, s)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=np.complex128)
        if b.shape != (self.m, self.n, self.s):
            raise ShapeError(f"blocks have shape {b.shape}, expected {(self.m, self.n, self.s)}")
        b.setflags(write=False)
        object.__setattr__(self, "blocks", b)

    def block(self, w: int) -> np.ndarray:
        """Block B_w, 1-based like the ket labels."""
        return self.blocks[w - 1]

    def side_matrix(self) -> np.ndarray:
        """m x (n s) matrix M with vec(C(r)) = r^T M."""
        return self.blocks.reshape(self.m, self.n * self.s)

    def stacked(self) -> np.ndarray:
        """(m n) x s matrix of basis amplitude vectors."""
        return self.blocks.reshape(self.m * self.n, self.s)

    @property
    def scale(self) -> float:
        """max over unit r of ||C(r)||_F; reference for all relative quantities."""
        return float(np.linalg.norm(self.side_matrix(), 2))


def build_blocks(basis, m: int, n: int) -> BlockFamily:
    basis = list(basis)
    if not basis:
        raise InvalidInputError("basis must be nonempty")
    for idx, v in enumerate(basis):
        if (v.m, v.n) != (m, n):
            raise ShapeError(f"basis vector {idx} lives in {v.m}x{v.n}, expected {m}x{n}")
    blocks = np.stack([coefficient_matrix(v) for v in basis], axis=-1)
    return BlockFamily(m, n, len(basis), blocks)


def family_of(e: EnsembleState, policy: RankPolicy | None = None) -> BlockFamily:
    return build_blocks(range_basis(e, policy), e.m, e.n)


def pencil_eval(f: BlockFamily, direction) -> np.ndarray:
    r = np.asarray(direction, dtype=np.complex128).ravel()
    if r.size != f.m:
        raise ShapeError(f"direction needs {f.m} entries, got {r.size}")
    if not np.any(r):
        raise InvalidInputError("direction must be nonzero")
    return np.einsum("w,wjl->jl", r, f.blocks)


def _pencil_policy(f: BlockFamily, policy: RankPolicy) -> RankPolicy:
    # C(r) carries round-off proportional to the family scale, not to its own norm
    return policy.with_floor(policy.relative_threshold * max(f.n, f.s) * f.scale)


def pencil_rank(f: BlockFamily, direction, policy: RankPolicy = DEFAULT_POLICY) -> int:
    """Numerical rank of C(r) at the normalized direction, judged against the family scale."""
    r = np.asarray(direction, dtype=np.complex128).ravel()
    C = pencil_eval(f, r / np.linalg.norm(r))
    return numerical_rank(C, _pencil_policy(f, policy))


def stacked_row_rank(e: EnsembleState, policy: RankPolicy | None = None) -> int:
    """Dimension of the span of all rows of the range-basis coefficient matrices."""
    policy = policy or e.policy
    rows = np.vstack([coefficient_matrix(v) for v in range_basis(e, policy)])
    return numerical_rank(rows, policy)


@dataclass(frozen=True)
class ProbeConfig:
    samples: int = 2000
    restarts: int = 20
    descent_steps: int = 200
    step_tolerance: float = 1e-10
    emptiness_gap: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        for name in ("samples", "restarts", "descent_steps"):
            if getattr(self, name) < 1:
                raise InvalidInputError(f"{name} must be >= 1")
        if not self.step_tolerance > 0:
            raise InvalidInputError("step_tolerance must be > 0")
        if not 0 < self.emptiness_gap < 1:
            raise InvalidInputError("emptiness_gap must lie in (0, 1)")


DEFAULT_PROBE = ProbeConfig()


class Verdict(str, enum.Enum):
    EMPTY_EXACT = "EmptyExact"
    EMPTY_PROBABILISTIC = "EmptyProbabilistic"
    NONEMPTY = "Nonempty"
    # gap not cleared, yet no direction verified rank-deficient
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class EmptinessCertificate:
    k: int
    verdict: Verdict
    evidence: float
    min_rank_found: int
    witness: np.ndarray | None = None
    side: str = "A"
    config: ProbeConfig | None = None
    policy: RankPolicy = field(default=DEFAULT_POLICY)

    @property
    def is_empty(self) -> bool:
        return self.verdict in (Verdict.EMPTY_EXACT, Verdict.EMPTY_PROBABILISTIC)


def _unit(r: np.ndarray) -> np.ndarray:
    r = r / np.linalg.norm(r)
    # fix the global phase so witnesses are reproducible and comparable
    i = int(np.argmax(np.abs(r)))
    return r * (abs(r[i]) / r[i])


def exact_v0(f: BlockFamily, policy: RankPolicy = DEFAULT_POLICY, side: str = "A") -> EmptinessCertificate:
    """V^0 is empty iff no r != 0 has r^T [A^1 | ... | A^s] = 0."""
    M = f.side_matrix()
    U, sv, _ = np.linalg.svd(M)
    tol = _pencil_policy(f, policy).tolerance(f.scale, (f.n, f.s))
    smallest = float(sv[f.m - 1]) if f.m <= sv.size else 0.0
    evidence = smallest / float(sv[0])
    # u^H M = 0  <=>  r^T M = 0 with r = conj(u); then ||C(r)||_F = smallest
    direction = _unit(U[:, f.m - 1].conj())
    found = pencil_rank(f, direction, policy)
    if smallest > tol:
        return EmptinessCertificate(0, Verdict.EMPTY_EXACT, evidence, found, None, side, None, policy)
    return EmptinessCertificate(0, Verdict.NONEMPTY, evidence, found, direction, side, None, policy)


def v0_empty_exact(e: EnsembleState, policy: RankPolicy | None = None, side: str = "A") -> EmptinessCertificate:
    """Exact decision of V_A^0 (side "A") or V_B^0 (side "B") being empty.

    The B-side test is equivalent to the rows of all range-basis
    coefficient matrices spanning C^n, i.e. ``stacked_row_rank(e) == n``.
    """
    policy = policy or e.policy
    if side == "B":
        e = swap_parties(e)
    elif side != "A":
        raise InvalidInputError(f"side must be 'A' or 'B', got {side!r}")
    return exact_v0(family_of(e, policy), policy, side)


@functools.lru_cache(maxsize=32)
def _sample_directions(m: int, samples: int, seed: int) -> np.ndarray:
    out = np.empty((samples, m), dtype=np.complex128)
    for i in range(samples):
        x = complex_gaussian(substream(seed, _SAMPLE_STREAM, i), m)
        out[i] = x / np.linalg.norm(x)
    out.setflags(write=False)
    return out


@dataclass
class _Probe:
    """Shared state of one probing run over a family."""

    f: BlockFamily
    cfg: ProbeConfig
    policy: RankPolicy

    def __post_init__(self):
        self.scale = self.f.scale
        self.tol = _pencil_policy(self.f, self.policy).tolerance(self.scale, (self.f.n, self.f.s))
        self.dirs = _sample_directions(self.f.m, self.cfg.samples, self.cfg.seed)
        C = np.einsum("pw,wjl->pjl", self.dirs, self.f.blocks)
        self.sv = np.linalg.svd(C, compute_uv=False)  # (samples, min(n, s))
        self.ranks = np.count_nonzero(self.sv > self.tol, axis=1)

    def singular_values(self, r: np.ndarray) -> np.ndarray:
        return np.linalg.svd(pencil_eval(self.f, r), compute_uv=False)

    def descend(self, r: np.ndarray, k: int) -> tuple[np.ndarray, float, bool]:
        """Alternating minimization of sum_{j>k} sigma_j^2 from r.

        Returns (best direction, best sigma_{k+1}/scale seen, reached locus).
        """
        B = self.f.blocks
        n = self.f.n
        best_r, best_ev = r, np.inf
        prev = np.inf
        for _ in range(self.cfg.descent_steps):
            U, sv, _ = np.linalg.svd(pencil_eval(self.f, r))
            ev = sv[k] / self.scale if k < sv.size else 0.0
            if ev < best_ev:
                best_r, best_ev = r, ev
            if k >= sv.size or sv[k] <= self.tol:
                return r, ev, True
            obj = float(np.sum(sv[k:] ** 2))
            if np.isfinite(prev) and prev - obj <= self.cfg.step_tolerance * prev:
                break
            prev = obj
            Q = np.eye(n) - U[:, :k] @ U[:, :k].conj().T
            QB = np.einsum("ij,wjl->wil", Q, B)
            G = np.einsum("wil,vil->wv", QB.conj(), QB)
            _, V = np.linalg.eigh((G + G.conj().T) / 2)
            r = _unit(V[:, 0])
        return best_r, best_ev, False

    def search(self, k: int) -> tuple[np.ndarray, float, bool]:
        """Best direction for level k over samples and restarts."""
        if k >= self.sv.shape[1]:
            return self.dirs[0], 0.0, True
        ratios = self.sv[:, k] / self.scale
        hits = np.flatnonzero(self.ranks <= k)
        if hits.size:
            i = int(hits[0])
            return self.dirs[i], float(ratios[i]), True
        order = np.argsort(ratios, kind="stable")
        best_i = int(order[0])
        best_r, best_ev = self.dirs[best_i], float(ratios[best_i])
        for j in range(self.cfg.restarts):
            if j < order.size:
                start = self.dirs[int(order[j])]
            else:
                start = complex_gaussian(substream(self.cfg.seed, _RESTART_STREAM, j), self.f.m)
            r, ev, hit = self.descend(start / np.linalg.norm(start), k)
            if ev < best_ev:
                best_r, best_ev = r, ev
            if hit:
                return r, ev, True
        return best_r, best_ev, False


@dataclass(frozen=True, eq=False)
class PencilRankResult:
    rank: int
    direction: np.ndarray
    evidence: np.ndarray  # singular values of C(direction) relative to the family scale


def min_pencil_rank(f: BlockFamily, cfg: ProbeConfig = DEFAULT_PROBE,
                    policy: RankPolicy = DEFAULT_POLICY) -> PencilRankResult:
    """Smallest rank of C(r) found over unit directions; an upper bound on the true minimum."""
    probe = _Probe(f, cfg, policy)
    i = int(np.argmin(probe.ranks))
    best_rank, best_r = int(probe.ranks[i]), probe.dirs[i]
    v0 = exact_v0(f, policy)
    if v0.verdict is Verdict.NONEMPTY:
        best_rank, best_r = 0, v0.witness
    while best_rank > 0:
        r, _, hit = probe.search(best_rank - 1)
        if not hit:
            break
        best_rank, best_r = pencil_rank(f, r, policy), r
    best_r = _unit(best_r)
    return PencilRankResult(best_rank, best_r, probe.singular_values(best_r) / probe.scale)


def locus_empty(f: BlockFamily, k: int, cfg: ProbeConfig = DEFAULT_PROBE,
                policy: RankPolicy = DEFAULT_POLICY, exact: bool = True,
                side: str = "A") -> EmptinessCertificate:
    """Certificate for V^k of the family being empty.

    ``exact=False`` forces the probing route at k = 0 as well.
    """
    if not 0 <= k <= min(f.n, f.s):
        raise InvalidInputError(f"k={k} outside [0, {min(f.n, f.s)}]")
    if k == 0 and exact:
        return exact_v0(f, policy, side)
    probe = _Probe(f, cfg, policy)
    r, ev, hit = probe.search(k)
    r = _unit(r)
    found = pencil_rank(f, r, policy)
    if hit:
        return EmptinessCertificate(k, Verdict.NONEMPTY, ev, found, r, side, cfg, policy)
    verdict = Verdict.EMPTY_PROBABILISTIC if ev > cfg.emptiness_gap else Verdict.INCONCLUSIVE
    return EmptinessCertificate(k, verdict, ev, found, None, side, cfg, policy)
