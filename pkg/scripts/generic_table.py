"""Print generic Schmidt-number bounds for a range of local dimensions.

    python scripts/generic_table.py --m-min 2 --m-max 12
"""

import argparse

from schmidt_loci.bounds import optimal_generic_bound, theorem1_case_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-min", type=int, default=2)
    ap.add_argument("--m-max", type=int, default=10)
    args = ap.parse_args()

    print(f"{'m':>4} {'r':>4} {'t*':>4} {'bound':>6}  applicable cases")
    for m in range(args.m_min, args.m_max + 1):
        for r in range(1, 2 * m - 2):
            t_star, bound = optimal_generic_bound(m, r)
            cases = ", ".join(f"{c.case}:{c.bound}" for c in theorem1_case_bounds(m, r) if c.applicable)
            print(f"{m:>4} {r:>4} {t_star if t_star else '-':>4} {bound:>6}  {cases}")


if __name__ == "__main__":
    main()
