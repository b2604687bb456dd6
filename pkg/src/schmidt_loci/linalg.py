"""Dense complex linear algebra used throughout the package.

All rank decisions go through :class:`RankPolicy` so results can be
reproduced; callers that report a rank also report the policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NotHermitianError, ShapeError

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class RankPolicy:
    """Threshold for counting singular values as nonzero.

    A singular value counts if it exceeds
    ``max(relative_threshold * sigma_max * max(rows, cols), absolute_floor)``.
    """

    relative_threshold: float = 1e-12
    absolute_floor: float = 0.0

    def __post_init__(self):
        if not self.relative_threshold > 0:
            raise InvalidInputError("relative_threshold must be > 0")
        if not self.absolute_floor >= 0:
            raise InvalidInputError("absolute_floor must be >= 0")

    def tolerance(self, sigma_max: float, shape: tuple[int, ...]) -> float:
        return max(self.relative_threshold * sigma_max * max(shape), self.absolute_floor)

    def with_floor(self, floor: float) -> "RankPolicy":
        return RankPolicy(self.relative_threshold, max(self.absolute_floor, floor))


DEFAULT_POLICY = RankPolicy()


def as_complex_matrix(M, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2:
        raise ShapeError(f"{name} must be two-dimensional, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return A


def rank_from_singular_values(sv: np.ndarray, shape: tuple[int, ...],
                              policy: RankPolicy = DEFAULT_POLICY) -> int:
    if sv.size == 0:
        return 0
    tol = policy.tolerance(float(sv[0]), shape)
    return int(np.count_nonzero(sv > tol))


def numerical_rank(M, policy: RankPolicy = DEFAULT_POLICY) -> int:
    """Number of singular values of ``M`` above the policy threshold."""
    A = as_complex_matrix(M)
    if A.size == 0:
        return 0
    sv = np.linalg.svd(A, compute_uv=False)
    return rank_from_singular_values(sv, A.shape, policy)


def hermitian_eig(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.

    Returns ``(values, vectors)`` with ``vectors[:, i]`` the unit eigenvector
    belonging to ``values[i]``.
    """
    A = as_complex_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    dev = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^H| = {dev:.3g})")
    A = (A + A.conj().T) / 2
    w, V = np.linalg.eigh(A)
    return w[::-1].copy(), V[:, ::-1].copy()


def independent_indices(vectors, policy: RankPolicy = DEFAULT_POLICY) -> list[int]:
    """Indices of a maximal linearly independent sublist of ``vectors``.

    Greedy left-to-right selection: a vector is kept when it raises the
    numerical rank of the kept set. The kept vectors span every input.
    """
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vecs:
        return []
    dim = vecs[0].size
    if any(v.size != dim for v in vecs):
        raise ShapeError("all vectors must have the same dimension")
    # tolerance is anchored to the full stack so a tiny vector cannot count as new
    full = np.column_stack(vecs)
    sv_all = np.linalg.svd(full, compute_uv=False)
    target = rank_from_singular_values(sv_all, full.shape, policy)
    floor = policy.tolerance(float(sv_all[0]), full.shape)
    kept: list[int] = []
    for i, v in enumerate(vecs):
        if len(kept) == target:
            break
        trial = np.column_stack([vecs[j] for j in kept] + [v])
        sv = np.linalg.svd(trial, compute_uv=False)
        if int(np.count_nonzero(sv > max(floor, policy.tolerance(float(sv[0]), trial.shape)))) > len(kept):
            kept.append(i)
    return kept


def column_space_basis(vectors, policy: RankPolicy = DEFAULT_POLICY) -> list:
    """Maximal linearly independent sublist of ``vectors`` (order preserved)."""
    vectors = list(vectors)
    return [vectors[i] for i in independent_indices(vectors, policy)]


def substream(seed: int, *index: int) -> np.random.Generator:
    """Independent generator for ``(seed, *index)``; order of use does not matter."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in index))
    return np.random.default_rng(ss)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def sample_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random unit vector in C^dim (normalized complex Gaussian)."""
    if dim < 1:
        raise InvalidInputError("dim must be >= 1")
    while True:
        x = complex_gaussian(rng, dim)
        nrm = np.linalg.norm(x)
        if nrm > 0:
            return x / nrm


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = complex_gaussian(rng, (dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
