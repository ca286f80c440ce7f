"""Colour counts of the partition-and-patch pipeline against plain DSATUR."""

import argparse

from reslab.adversaries import random_degree_bounded
from reslab.coloring import dsatur, part_count, partition_color_union
from reslab.generators import derive_seed, gnp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>6} {'s':>5} {'n/s':>6} {'union':>6} {'patch':>6} {'dsatur(G)':>10} {'ratio':>6}")
    for n in args.sizes:
        g = gnp(n, args.p, derive_seed(args.seed, n, 0))
        h = random_degree_bounded(g, args.d, "add", derive_seed(args.seed, n, 1)).H
        u = partition_color_union(g, h, args.d, derive_seed(args.seed, n, 2), p=args.p)
        base = dsatur(g).count
        s = part_count(n * args.p, args.d, n)
        print(f"{n:>6} {s:>5} {n / s:>6.1f} {u.coloring.count:>6} {u.patch_size:>6} "
              f"{base:>10} {u.coloring.count / base:>6.2f}")


if __name__ == "__main__":
    main()
