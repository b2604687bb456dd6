from fractions import Fraction

import numpy as np
import pytest


def exact_rank(rows) -> int:
    """Rank by Gaussian elimination over the rationals."""
    M = [[Fraction(x) for x in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                fac = M[i][c] / M[rank][c]
                M[i] = [a - fac * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def cp1_grid(points: int = 100):
    """points**2 unit directions (cos th, e^{i phi} sin th) covering CP^1."""
    th = np.linspace(0, np.pi / 2, points)
    ph = np.linspace(0, 2 * np.pi, points, endpoint=False)
    T, P = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.cos(T).ravel() + 0j, (np.exp(1j * P) * np.sin(T)).ravel()], axis=1)


def grid_min_rank(blocks: np.ndarray, rel: float = 1e-12, points: int = 100) -> int:
    """Brute-force minimum pencil rank of an m=2 family over a CP^1 grid."""
    m, n, s = blocks.shape
    assert m == 2
    scale = np.linalg.norm(blocks.reshape(m, n * s), 2)
    C = np.einsum("pw,wjl->pjl", cp1_grid(points), blocks)
    sv = np.linalg.svd(C, compute_uv=False)
    return int(np.count_nonzero(sv > rel * max(n, s) * scale, axis=1).min())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
