"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines, or execute this
file directly.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import exact_rank, grid_min_rank  # noqa: E402
from schmidt_loci.bounds import analyze, optimal_generic_bound, theorem1_case_bounds  # noqa: E402
from schmidt_loci.errors import InvalidInputError  # noqa: E402
from schmidt_loci.experiments import example3_subspace, run_generic_experiment  # noqa: E402
from schmidt_loci.linalg import haar_unitary, substream  # noqa: E402
from schmidt_loci.locus import (Verdict, family_of, min_pencil_rank, stacked_row_rank,  # noqa: E402
                                v0_empty_exact)
from schmidt_loci.states import (EnsembleState, apply_local_unitary, coefficient_matrix,  # noqa: E402
                                 example1, example2, max_entangled, random_product_state,
                                 random_rank_r_state, schmidt_rank)


def ac1_example1():
    rep = analyze(example1(1, 1))
    exact = [c for c in rep.chain if c.t == rep.m and c.verdict is Verdict.EMPTY_EXACT]
    ok = rep.certified_bound >= 3 and any(c.bound >= 3 for c in exact)
    return ok, f"certified {rep.certified_bound} via exact t={rep.m} entries {[c.side for c in exact]}", 1.0


def ac2_example2():
    exact, overall = [], []
    for seed in range(10):
        rep = analyze(example2(1, 1, 1, seed))
        exact.append(rep.exact_bound)
        overall.append(rep.certified_bound)
    ok = all(b == 3 for b in exact) and all(b >= 3 for b in overall)
    return ok, f"exact bounds {exact}; with probed loci {overall}", 5.0


def ac3_case_table():
    expected = {(16, 16): (1, 3), (16, 20): (2, 2), (169, 200): (3, 3), (10, 17): (4, 2)}
    got = {}
    for (m, r), (case, value) in expected.items():
        c = theorem1_case_bounds(m, r)[case - 1]
        got[(m, r)] = (case, c.bound if c.applicable else None)
    return got == expected, f"{got}", None


def ac4_consistency_scan():
    checked = 0
    for m in range(2, 201):
        for r in range(1, 2 * m - 2):
            best = optimal_generic_bound(m, r)[1]
            for c in theorem1_case_bounds(m, r):
                if c.applicable:
                    checked += 1
                    if best < c.bound:
                        return False, f"(m={m}, r={r}) case {c.case}: {best} < {c.bound}", 10.0
    return True, f"{checked} applicable (m, r, case) triples dominated", 10.0


def _genericity(m, r):
    s = run_generic_experiment(m, r, 50, 2, seed=42)
    return s.success_fraction >= 0.95, f"m={m} r={r}: success fraction {s.success_fraction:.2f}", 120.0


def ac5a_genericity_5_7():
    return _genericity(5, 7)


def ac5b_genericity_6_6():
    return _genericity(6, 6)


def ac6_grid_oracle():
    mismatches = []
    for seed in range(100):
        f = family_of(random_rank_r_state(2, 3, 2, seed))
        got, oracle = min_pencil_rank(f).rank, grid_min_rank(f.blocks)
        if got != oracle:
            mismatches.append((seed, got, oracle))
    return not mismatches, f"100 families, mismatches {mismatches}", 30.0


def ac7_soundness():
    rng = substream(2024)
    worst, ones = 0, 0
    for _ in range(50):
        k = int(rng.integers(1, 5))
        sts = [random_product_state(4, 4, rng) for _ in range(k)]
        b = analyze(EnsembleState.from_members(rng.dirichlet(np.ones(k)), sts)).certified_bound
        worst = max(worst, b)
        ones += b == 1
    pure = [analyze(EnsembleState.from_members([1], [random_product_state(4, 4, rng)])).certified_bound
            for _ in range(20)]
    ok = worst <= 4 and all(b == 1 for b in pure)
    return ok, f"max bound on mixtures {worst} ({ones}/50 certify 1); pure products {set(pure)}", None


def ac8_schmidt_facts():
    rng = substream(8)
    me = schmidt_rank(max_entangled(7)).rank
    products = {schmidt_rank(random_product_state(5, 5, rng)).rank for _ in range(100)}
    v2 = example1().states[1]
    oracle = exact_rank(np.rint(2 * coefficient_matrix(v2).real).astype(int).tolist())
    got = schmidt_rank(v2).rank
    ok = me == 7 and products == {1} and got == oracle == 3
    return ok, f"max_entangled(7) -> {me}; products -> {products}; v2 -> {got} (exact {oracle})", None


def ac9_example3():
    rng = substream(9)
    fails = 0
    for _ in range(20):
        while True:
            a, b, c, d = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            if abs(d) > 1e-3 and abs(a * d - b * c) > 1e-3:
                break
        *_, checks = example3_subspace(a, b, c, d)
        fails += not checks.passed
    named = []
    for params, name in [((1, 1, 1, 1), "ad=bc"), ((1, 2, 3, 0), "d=0")]:
        try:
            example3_subspace(*params)
        except InvalidInputError as exc:
            named.append(name in str(exc))
        else:
            named.append(False)
    return fails == 0 and all(named), f"{20 - fails}/20 admissible pass; degenerate rejected {named}", 5.0


def ac10_local_unitary():
    e = example1()
    ref = (stacked_row_rank(e), v0_empty_exact(e, side="A").verdict, v0_empty_exact(e, side="B").verdict)
    changed = 0
    for i in range(20):
        rng = substream(10, i)
        g = apply_local_unitary(e, haar_unitary(5, rng), haar_unitary(5, rng))
        got = (stacked_row_rank(g), v0_empty_exact(g, side="A").verdict, v0_empty_exact(g, side="B").verdict)
        changed += got != ref
    return changed == 0, f"reference {ref[0]}, {ref[1].value}/{ref[2].value}; {changed}/20 changed", None


CRITERIA = [
    ("AC1 Example 1 bound >= 3 (exact t=m)", ac1_example1),
    ("AC2 Example 2 bound 3 over 10 seeds", ac2_example2),
    ("AC3 generic case table", ac3_case_table),
    ("AC4 optimal t dominates case table", ac4_consistency_scan),
    ("AC5a genericity m=5 r=7", ac5a_genericity_5_7),
    ("AC5b genericity m=6 r=6", ac5b_genericity_6_6),
    ("AC6 min pencil rank vs CP^1 grid", ac6_grid_oracle),
    ("AC7 soundness on separable states", ac7_soundness),
    ("AC8 Schmidt rank facts", ac8_schmidt_facts),
    ("AC9 product-span construction", ac9_example3),
    ("AC10 local-unitary invariance", ac10_local_unitary),
]


def run_criterion(name, fn):
    start = time.perf_counter()
    ok, detail, limit = fn()
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = f" / {limit:g}s" if limit else ""
    print(f"[{status}] {name}: {detail} ({elapsed:.2f}s{budget})")
    return ok, in_time, elapsed


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, fn):
    ok, in_time, elapsed = run_criterion(name, fn)
    assert ok, name
    assert in_time, f"{name} took {elapsed:.1f}s"


if __name__ == "__main__":
    results = [run_criterion(name, fn) for name, fn in CRITERIA]
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)
