"""Locate r*/np for perfect matchings under the isolate attack across n."""

import argparse

from reslab.engine import AdversarySpec, ExperimentConfig, GraphSource, sweep, write_results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("--p", type=float, default=0.2)
    ap.add_argument("--variant", choices=("uniform", "lowest-degree"), default="lowest-degree")
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", help="prefix for per-size result files")
    args = ap.parse_args()

    budgets = [round(0.30 + 0.02 * i, 2) for i in range(21)]
    print(f"{'n':>6} {'np':>7} {'r*':>8} {'r*/np':>7}")
    for n in args.sizes:
        cfg = ExperimentConfig("perfect-matching", GraphSource("gnp", n, args.p),
                               AdversarySpec("isolate_larger_half", variant=args.variant),
                               budgets, "np", args.trials, args.seed)
        curve, records = sweep(cfg, threads=args.threads)
        if args.out:
            write_results(f"{args.out}-n{n}", curve, records)
        r, norm = curve.threshold, curve.threshold_normalized
        print(f"{n:>6} {n * args.p:>7.1f} {r if r is not None else float('nan'):>8.1f} "
              f"{norm if norm is not None else float('nan'):>7.3f}")


if __name__ == "__main__":
    main()
