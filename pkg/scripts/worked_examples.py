"""Analyze the bundled example states and the 2x2 product-span construction."""

from schmidt_loci.bounds import analyze
from schmidt_loci.experiments import example3_subspace
from schmidt_loci.states import example1, example2


def show(label, e):
    rep = analyze(e)
    print(f"{label}: rank {rep.r}, Schmidt number >= {rep.certified_bound} ({rep.provenance}), "
          f"exact route alone >= {rep.exact_bound}")
    for c in rep.chain:
        print(f"    t={c.t} k={c.k} side={c.side} {c.verdict.value:<18} evidence={c.evidence:.3g}")


def main():
    show("5x5 rank-2 example", example1(1, 1))
    for seed in range(3):
        show(f"7x7 rank-3 example (seed {seed})", example2(1, 1, 1, seed))
    *_, checks = example3_subspace(1 + 2j, 0.5, -1j, 2)
    print(f"product span in 2x2: Schmidt ranks {checks.schmidt_ranks}, span rank {checks.span_rank}, "
          f"passed={checks.passed}")


if __name__ == "__main__":
    main()
