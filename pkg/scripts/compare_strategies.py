"""Which upper-bound construction needs the smaller budget at finite n?

Reports the mean Delta(H) each budget-independent strategy needs, next to the
destroyed fraction once that budget is granted.
"""

import argparse

import numpy as np

from reslab.engine import AdversarySpec, ExperimentConfig, GraphSource, run_trials

STRATEGIES = [
    ("isolate uniform", AdversarySpec("isolate_larger_half")),
    ("isolate lowest-degree", AdversarySpec("isolate_larger_half", variant="lowest-degree")),
    ("cut bisection", AdversarySpec("cut_bisection")),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--p", type=float, default=0.2)
    ap.add_argument("--property", default="perfect-matching",
                    choices=("perfect-matching", "hamiltonicity"))
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    np_ = args.n * args.p
    print(f"{args.property}, n={args.n}, np={np_:.1f}")
    for label, spec in STRATEGIES:
        cfg = ExperimentConfig(args.property, GraphSource("gnp", args.n, args.p), spec,
                               [args.n], "abs", args.trials, args.seed)
        recs = run_trials(cfg)
        deltas = np.array([r.outcomes[0].delta_h for r in recs if r.outcomes])
        destroyed = np.mean([r.outcomes[0].destroyed for r in recs if r.outcomes])
        print(f"  {label:<22} Delta(H)/np = {deltas.mean() / np_:.3f} "
              f"(sd {deltas.std() / np_:.3f})  destroyed {destroyed:.2f}")


if __name__ == "__main__":
    main()
