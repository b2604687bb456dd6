"""Bipartite pure and mixed states on C^m (x) C^n.

Basis ordering is |11>, ..., |1n>, ..., |m1>, ..., |mn>: the ket |ij>
(1-based, as written in the literature) sits at flat index
``(i - 1) * n + (j - 1)``, so ``amplitudes.reshape(m, n)`` is the
coefficient matrix ``a_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (InternalError, InvalidInputError, NotPositiveError,
                     ShapeError, TraceError)
from .linalg import (DEFAULT_POLICY, HERMITIAN_TOL, RankPolicy, as_complex_matrix,
                     complex_gaussian, hermitian_eig, independent_indices,
                     numerical_rank, rank_from_singular_values, substream)

NORM_TOL = 1e-9


def flat_index(i: int, j: int, n: int) -> int:
    """Flat position of the 1-based ket |ij>."""
    return (i - 1) * n + (j - 1)


@dataclass(frozen=True, eq=False)
class PureState:
    m: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if self.m < 1 or self.n < 1:
            raise InvalidInputError("local dimensions must be positive")
        if amp.size != self.m * self.n:
            raise ShapeError(f"expected {self.m * self.n} amplitudes, got {amp.size}")
        if not np.all(np.isfinite(amp)):
            raise InvalidInputError("amplitudes must be finite")
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1) > NORM_TOL:
            raise InvalidInputError(f"state is not normalized (norm {nrm:.12g})")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def from_matrix(cls, A, normalize: bool = False) -> "PureState":
        A = as_complex_matrix(A, "coefficient matrix")
        if normalize:
            nrm = np.linalg.norm(A)
            if nrm == 0:
                raise InvalidInputError("cannot normalize the zero vector")
            A = A / nrm
        return cls(A.shape[0], A.shape[1], A.ravel())

    @classmethod
    def from_kets(cls, m: int, n: int, terms: Mapping[tuple[int, int], complex],
                  normalize: bool = True) -> "PureState":
        """Build from ``{(i, j): coefficient}`` using 1-based ket labels."""
        amp = np.zeros(m * n, dtype=np.complex128)
        for (i, j), c in terms.items():
            if not (1 <= i <= m and 1 <= j <= n):
                raise InvalidInputError(f"ket |{i}{j}> outside {m}x{n}")
            amp[flat_index(i, j, n)] += c
        if normalize:
            nrm = np.linalg.norm(amp)
            if nrm == 0:
                raise InvalidInputError("cannot normalize the zero vector")
            amp /= nrm
        return cls(m, n, amp)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def allclose(self, other: "PureState", atol: float = 1e-10, up_to_phase: bool = False) -> bool:
        if (self.m, self.n) != (other.m, other.n):
            return False
        a, b = self.amplitudes, other.amplitudes
        if up_to_phase:
            ov = np.vdot(b, a)
            if abs(ov) > 0:
                b = b * (ov / abs(ov))
        return bool(np.allclose(a, b, atol=atol, rtol=0))


def coefficient_matrix(v: PureState) -> np.ndarray:
    """The m x n matrix whose (i, j) entry is the amplitude of |ij> (0-based)."""
    return v.amplitudes.reshape(v.m, v.n)


@dataclass(frozen=True)
class SchmidtInfo:
    rank: int
    singular_values: np.ndarray
    policy: RankPolicy = DEFAULT_POLICY


def schmidt_rank(v: PureState, policy: RankPolicy = DEFAULT_POLICY) -> SchmidtInfo:
    A = coefficient_matrix(v)
    sv = np.linalg.svd(A, compute_uv=False)
    return SchmidtInfo(rank_from_singular_values(sv, A.shape, policy), sv, policy)


@dataclass(frozen=True, eq=False)
class EnsembleState:
    """rho = sum_l p_l |v_l><v_l| with positive weights summing to one."""

    m: int
    n: int
    weights: np.ndarray
    states: tuple[PureState, ...]
    policy: RankPolicy = field(default=DEFAULT_POLICY)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        states = tuple(self.states)
        if len(states) == 0 or len(states) != w.size:
            raise InvalidInputError("need one positive weight per member state")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            bad = [i for i, x in enumerate(w) if not (np.isfinite(x) and x > 0)]
            raise InvalidInputError(f"weights must be positive (offending members: {bad})")
        if abs(w.sum() - 1) > NORM_TOL:
            raise InvalidInputError(f"weights sum to {w.sum():.12g}, expected 1")
        for idx, s in enumerate(states):
            if (s.m, s.n) != (self.m, self.n):
                raise ShapeError(f"member {idx} lives in {s.m}x{s.n}, expected {self.m}x{self.n}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", states)

    @classmethod
    def from_members(cls, weights: Sequence[float], states: Sequence[PureState],
                     normalize: bool = True, policy: RankPolicy = DEFAULT_POLICY) -> "EnsembleState":
        w = np.asarray(weights, dtype=float)
        if normalize and np.all(w > 0):
            w = w / w.sum()
        if not states:
            raise InvalidInputError("ensemble needs at least one member")
        return cls(states[0].m, states[0].n, w, tuple(states), policy)

    @property
    def members(self) -> list[tuple[float, PureState]]:
        return list(zip(self.weights.tolist(), self.states))

    def amplitude_matrix(self) -> np.ndarray:
        """(m*n) x t matrix whose columns are the member amplitude vectors."""
        return np.column_stack([s.amplitudes for s in self.states])

    @property
    def rank(self) -> int:
        return numerical_rank(self.amplitude_matrix(), self.policy)

    def density_matrix(self) -> np.ndarray:
        A = self.amplitude_matrix()
        return (A * self.weights) @ A.conj().T


def from_density(rho, m: int, n: int, policy: RankPolicy = DEFAULT_POLICY) -> EnsembleState:
    """Spectral ensemble of a density matrix, dropping eigenvalues below the cutoff."""
    R = as_complex_matrix(rho, "rho")
    d = m * n
    if R.shape != (d, d):
        raise ShapeError(f"rho must be {d}x{d} for a {m}x{n} system, got {R.shape[0]}x{R.shape[1]}")
    tr = np.trace(R)
    if abs(tr - 1) > NORM_TOL:
        raise TraceError(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1")
    w, V = hermitian_eig(R)
    if w[-1] < -HERMITIAN_TOL:
        raise NotPositiveError(f"rho has a negative eigenvalue {w[-1]:.3g}")
    keep = w > policy.relative_threshold * max(w[0], 0.0)
    if not np.any(keep):
        raise NotPositiveError("rho has no positive eigenvalue")
    weights = w[keep] / w[keep].sum()
    states = tuple(PureState(m, n, V[:, i] / np.linalg.norm(V[:, i])) for i in np.flatnonzero(keep))
    e = EnsembleState(m, n, weights, states, policy)
    err = np.max(np.abs(e.density_matrix() - R))
    if err > 1e-8:
        raise InternalError(f"spectral reconstruction error {err:.3g}")
    return e


def range_basis(e: EnsembleState, policy: RankPolicy | None = None) -> list[PureState]:
    """Linearly independent members spanning the range of the ensemble."""
    policy = policy or e.policy
    return [e.states[i] for i in independent_indices([s.amplitudes for s in e.states], policy)]


def swap_parties(e: EnsembleState) -> EnsembleState:
    """The same state with the two tensor factors exchanged (n x m system)."""
    swapped = tuple(PureState.from_matrix(coefficient_matrix(s).T) for s in e.states)
    return EnsembleState(e.n, e.m, e.weights, swapped, e.policy)


def apply_local_unitary(e: EnsembleState, UA, UB) -> EnsembleState:
    """Ensemble of (UA (x) UB) rho (UA (x) UB)^dagger."""
    UA, UB = np.asarray(UA), np.asarray(UB)
    states = tuple(PureState.from_matrix(UA @ coefficient_matrix(s) @ UB.T) for s in e.states)
    return EnsembleState(e.m, e.n, e.weights, states, e.policy)


def random_pure_state(m: int, n: int, rng: np.random.Generator) -> PureState:
    return PureState.from_matrix(complex_gaussian(rng, (m, n)), normalize=True)


def random_product_state(m: int, n: int, rng: np.random.Generator) -> PureState:
    a = complex_gaussian(rng, m)
    b = complex_gaussian(rng, n)
    return PureState.from_matrix(np.outer(a, b), normalize=True)


MAX_RETRIES = 3


def random_rank_r_state(m: int, n: int, r: int, seed: int,
                        policy: RankPolicy = DEFAULT_POLICY) -> EnsembleState:
    """Random mixed state of rank r: Gaussian members, flat-Dirichlet weights."""
    if not 1 <= r <= m * n:
        raise InvalidInputError(f"rank r={r} must lie in [1, {m * n}]")
    for attempt in range(MAX_RETRIES + 1):
        rng = substream(seed, attempt)
        states = tuple(random_pure_state(m, n, rng) for _ in range(r))
        weights = rng.dirichlet(np.ones(r))
        if np.any(weights <= 0):
            continue
        e = EnsembleState(m, n, weights / weights.sum(), states, policy)
        if e.rank == r:
            return e
    raise InternalError(f"could not draw a rank-{r} state after {MAX_RETRIES} retries")


def max_entangled(m: int) -> PureState:
    """(|11> + ... + |mm>) / sqrt(m)."""
    return PureState.from_matrix(np.eye(m) / np.sqrt(m))


def _positive(*lams):
    if any(not (np.isfinite(x) and x > 0) for x in lams):
        raise InvalidInputError(f"weights must be positive, got {lams}")


def example1(lam1: float = 1.0, lam2: float = 1.0) -> EnsembleState:
    """Rank-2 state on 5x5 mixing a Bell pair on {1,2} and a rank-3 vector on {3,4,5}."""
    _positive(lam1, lam2)
    s2 = 1 / np.sqrt(2)
    v1 = PureState.from_kets(5, 5, {(1, 1): s2, (2, 2): s2}, normalize=False)
    v2 = PureState.from_kets(5, 5, {(3, 3): 0.5, (4, 4): 0.5, (5, 5): 0.5, (4, 5): 0.5},
                             normalize=False)
    return EnsembleState.from_members([lam1, lam2], [v1, v2])


def example2(lam1: float = 1.0, lam2: float = 1.0, lam3: float = 1.0, seed: int = 0) -> EnsembleState:
    """Rank-3 state on 7x7: maximally entangled v1 plus two random members."""
    _positive(lam1, lam2, lam3)
    others = random_rank_r_state(7, 7, 2, seed).states
    return EnsembleState.from_members([lam1, lam2, lam3], [max_entangled(7), *others])


def example_state(name: str, *args, **kwargs):
    """Dispatch on ``"example1"``, ``"example2"`` or ``"max_entangled"``."""
    table = {"example1": example1, "example2": example2, "max_entangled": max_entangled}
    try:
        fn = table[name]
    except KeyError:
        raise InvalidInputError(f"unknown example {name!r}; choose from {sorted(table)}") from None
    return fn(*args, **kwargs)
