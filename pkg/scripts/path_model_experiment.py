#!/usr/bin/env python3
"""Sweep the degree/path-length closed form against measured random graphs.

Runs the BFS oracle over a small (n, k) grid and prints where the formula
holds and where it starts to drift (dense or tiny graphs).
"""

import argparse

from oesnn.netgen import validate_path_model


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=float, nargs="+", default=[500, 1000, 2000])
    parser.add_argument("--degrees", type=float, nargs="+", default=[8, 16, 32])
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tolerance", type=float, default=0.15)
    args = parser.parse_args()

    rows = validate_path_model(
        args.sizes, args.degrees, seeds=args.seeds, base_seed=args.seed, tolerance=args.tolerance
    )
    print(f"{'n':>8} {'k':>8} {'predicted':>10} {'measured':>10} {'rel_err':>8} {'reach':>7}  ok")
    for r in rows:
        flag = "yes" if r["within_tolerance"] else "NO"
        print(
            f"{r['n']:>8d} {r['degree']:>8.1f} {r['predicted']:>10.3f} "
            f"{r['empirical_mean']:>10.3f} {r['rel_error']:>8.3f} "
            f"{r['min_reachable_fraction']:>7.3f}  {flag}"
        )


if __name__ == "__main__":
    main()
