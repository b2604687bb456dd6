import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schmidt_loci.bounds import (analyze, generic_t_condition, optimal_generic_bound,
                                 theorem1_case_bounds, theorem2_bound)
from schmidt_loci.errors import InvalidInputError, UnsupportedConfigurationError
from schmidt_loci.linalg import substream
from schmidt_loci.locus import ProbeConfig, Verdict
from schmidt_loci.states import (EnsembleState, PureState, example1, example2, max_entangled,
                                 random_product_state, random_rank_r_state)

FAST = ProbeConfig(samples=300, restarts=10)


@pytest.mark.parametrize("m,r,t,expected", [(5, 2, 5, 3), (7, 3, 7, 3), (10, 17, 2, 2)])
def test_theorem2_bound(m, r, t, expected):
    assert theorem2_bound(m, r, t) == expected


def test_theorem2_bound_rejects_outside_proof():
    with pytest.raises(InvalidInputError):
        theorem2_bound(5, 2, 3)  # r - m + t = 0
    with pytest.raises(InvalidInputError):
        theorem2_bound(5, 2, 6)


@given(st.integers(1, 12), st.integers(1, 30), st.integers(1, 12))
def test_theorem2_bound_is_ceiling(m, r, t):
    if t > m or r - m + t < 1:
        return
    assert theorem2_bound(m, r, t) == math.ceil(m / (r - m + t))


@given(st.integers(1, 12), st.integers(1, 30), st.integers(1, 12))
def test_theorem2_bound_monotone(m, r, t):
    if t > m or r - m + t < 1:
        return
    b = theorem2_bound(m, r, t)
    if t + 1 <= m:
        assert theorem2_bound(m, r, t + 1) <= b
    assert theorem2_bound(m, r + 1, t) <= b


@pytest.mark.parametrize("m,r,t,expected", [(16, 16, 5, True), (5, 7, 2, True), (5, 7, 1, False)])
def test_generic_t_condition(m, r, t, expected):
    assert generic_t_condition(m, r, t) is expected


def _scan_oracle(m, r):
    ok = [t for t in range(1, m + 1) if t >= m - r + 1 and t * (r - m + t) >= m]
    return (ok[0], math.ceil(m / (r - m + ok[0]))) if ok else (None, 1)


@pytest.mark.parametrize("m,r,expected", [(5, 2, (5, 3)), (16, 16, (4, 4)), (10, 17, (2, 2))])
def test_optimal_generic_bound(m, r, expected):
    assert optimal_generic_bound(m, r) == expected == _scan_oracle(m, r)


@given(st.integers(2, 60), st.integers(1, 150))
def test_optimal_generic_bound_matches_scan(m, r):
    assert optimal_generic_bound(m, r) == _scan_oracle(m, r)


def _case(m, r, i):
    return theorem1_case_bounds(m, r)[i - 1]


def test_case_table():
    c = _case(16, 16, 1)
    assert c.applicable and c.bound == 3
    c = _case(16, 20, 2)
    assert c.applicable and c.bound == 2
    c = _case(169, 200, 3)
    assert c.applicable and c.bound == 3
    c = _case(10, 17, 4)
    assert c.applicable and c.bound == 2


def test_case3_hypothesis_verbatim():
    assert not _case(168, 200, 3).applicable   # m < 169
    assert not _case(169, 249, 3).applicable   # r > 3m/2 - 5 = 248.5
    assert _case(169, 248, 3).applicable
    assert not _case(169, 169, 3).applicable   # needs r > m


def test_optimal_dominates_case_table_small():
    for m in range(2, 40):
        for r in range(1, 2 * m - 2):
            best = optimal_generic_bound(m, r)[1]
            assert all(best >= c.bound for c in theorem1_case_bounds(m, r) if c.applicable)


def test_analyze_example1():
    rep = analyze(example1())
    assert rep.certified_bound == 3 == rep.exact_bound
    assert any(c.t == 5 and c.verdict is Verdict.EMPTY_EXACT for c in rep.chain)
    assert rep.provenance == "exact"
    assert rep.generic_bound == 3


def test_analyze_example2_exact_and_probed():
    for seed in range(3):
        rep = analyze(example2(seed=seed), FAST)
        assert rep.exact_bound == 3
        assert rep.certified_bound >= 3
        probed = [c for c in rep.chain if c.verdict is Verdict.EMPTY_PROBABILISTIC]
        # V_A^1 is empty when v2, v3 share no eigenvector of the transposed coefficient matrices
        assert [c.t for c in probed] == [6] and rep.certified_bound == 4


def test_analyze_product_state():
    rep = analyze(EnsembleState.from_members([1], [PureState.from_kets(2, 2, {(1, 1): 1})]))
    assert rep.certified_bound == 1 and rep.provenance == "none"


def test_analyze_pure_states_recover_schmidt_rank_when_full():
    rep = analyze(EnsembleState.from_members([1], [max_entangled(4)]))
    assert rep.certified_bound == 4


def test_analyze_separable_mixtures_certify_one():
    rng = substream(31)
    for _ in range(30):
        k = int(rng.integers(1, 5))
        sts = [random_product_state(4, 4, rng) for _ in range(k)]
        e = EnsembleState.from_members(rng.dirichlet(np.ones(k)), sts)
        assert analyze(e, FAST).certified_bound == 1


def test_analyze_rejects_rectangular():
    with pytest.raises(UnsupportedConfigurationError):
        analyze(random_rank_r_state(2, 3, 2, 0))


def test_analyze_single_t():
    e = random_rank_r_state(5, 5, 7, 0)
    rep = analyze(e, FAST, t=2)
    assert [c.t for c in rep.chain] == [2]
    assert rep.certified_bound == 2
    with pytest.raises(InvalidInputError):
        analyze(e, FAST, t=6)


def test_analyze_high_rank_generic_bound():
    rep = analyze(random_rank_r_state(3, 3, 4, 0), FAST)
    assert rep.generic_bound == 1


def test_analyze_report_invariants():
    for seed in range(5):
        e = random_rank_r_state(4, 4, 1 + seed, seed)
        rep = analyze(e, FAST)
        assert 1 <= rep.certified_bound <= 4
        empties = [c for c in rep.chain if c.verdict in (Verdict.EMPTY_EXACT, Verdict.EMPTY_PROBABILISTIC)]
        for c in empties:
            assert rep.r - rep.m + c.t >= 1
        assert rep.certified_bound == max([1] + [c.bound for c in empties])
