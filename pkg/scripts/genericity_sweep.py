"""Certify bounds on random rank-r states over a grid of (m, r) and save the records.

    python scripts/genericity_sweep.py --m 4 5 6 --trials 20 --out results/
"""

import argparse
from pathlib import Path

from schmidt_loci.bounds import optimal_generic_bound
from schmidt_loci.experiments import export_summary, run_generic_experiment
from schmidt_loci.locus import ProbeConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--restarts", type=int, default=20)
    ap.add_argument("--out", type=Path, default=None, help="directory for per-(m, r) JSON records")
    args = ap.parse_args()

    cfg = ProbeConfig(samples=args.samples, restarts=args.restarts)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'m':>3} {'r':>3} {'target':>6} {'success':>8} {'mean ms':>9}")
    for m in args.m:
        for r in range(1, 2 * m - 2):
            target = optimal_generic_bound(m, r)[1]
            s = run_generic_experiment(m, r, args.trials, target, cfg, args.seed)
            mean_ms = sum(rec.elapsed_ms for rec in s.records) / len(s.records)
            print(f"{m:>3} {r:>3} {target:>6} {s.success_fraction:>8.2f} {mean_ms:>9.1f}")
            if args.out:
                (args.out / f"m{m}_r{r}.json").write_bytes(export_summary(s, "json"))


if __name__ == "__main__":
    main()
