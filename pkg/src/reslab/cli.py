"""Command-line entry point: gen, check, attack, sweep, validate."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .adversaries import AdversaryMove
from .coloring import dsatur, exact_chromatic, EXACT_CHROMATIC_CAP
from .engine import (LEMMAS, PROPERTIES, STRATEGIES, AdversarySpec, ExperimentConfig,
                     GraphSource, dumps, parse_flat_config, sweep, validate_lemma, write_results)
from .generators import gnp, random_regular
from .graph import GraphError, parse_edge_list, serialize_edge_list
from .hamilton import EXACT_CAP, exact_hamilton, posa_find_hamilton
from .matching import max_matching

ALIASES = {"matching": "perfect-matching", "hamilton": "hamiltonicity",
           "chromatic": "chromatic-inflation"}


def _property(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in PROPERTIES:
        raise argparse.ArgumentTypeError(f"unknown property {name!r}")
    return name


def _budgets(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget list {text!r}") from None


def _read_graph(path: str):
    return parse_edge_list(Path(path).read_text())


def _emit(payload: dict, out: Optional[str]) -> None:
    text = dumps(payload)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve_seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _resolved(args) -> dict:
    skip = {"func", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args) -> None:
    seed = _resolve_seed(args)
    if args.model == "gnp":
        if args.p is None:
            raise GraphError("gnp needs --p")
        g = gnp(args.n, args.p, seed)
    else:
        if args.d is None:
            raise GraphError("regular needs --d")
        g = random_regular(args.n, args.d, seed)
    text = serialize_edge_list(g)
    # The edge-list format has no comment syntax, so the config goes to stderr.
    print(json.dumps({"config": _resolved(args), "version": __version__}, sort_keys=True),
          file=sys.stderr)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> None:
    seed = _resolve_seed(args)
    g = _read_graph(args.graph)
    verdict: dict = {"n": g.n, "m": g.m}
    if args.property == "perfect-matching":
        mm = max_matching(g)
        verdict.update(matching_size=mm.size, perfect=mm.is_perfect(g.n),
                       near_perfect=mm.is_near_perfect(g.n), matching=mm.to_json())
    elif args.property == "hamiltonicity":
        if args.exact:
            if g.n > EXACT_CAP:
                raise GraphError(f"--exact supports n <= {EXACT_CAP}")
            cyc = exact_hamilton(g)
            verdict["method"] = "exact"
        else:
            cyc = posa_find_hamilton(g, seed, args.restarts, args.rotations)
            verdict["method"] = "posa"
        verdict.update(found=cyc is not None, cycle=cyc)
    else:
        col = dsatur(g)
        verdict.update(dsatur=col.count, colors=col.colors)
        if args.exact:
            if g.n > EXACT_CHROMATIC_CAP:
                raise GraphError(f"--exact supports n <= {EXACT_CHROMATIC_CAP}")
            verdict["chromatic_number"] = exact_chromatic(g)
    _emit({"config": _resolved(args), "version": __version__, "verdict": verdict}, args.out)


def cmd_attack(args) -> None:
    seed = _resolve_seed(args)
    g = _read_graph(args.graph)
    if args.h_file:
        h = _read_graph(args.h_file)
        if args.budget is None:
            raise GraphError("--h-file needs --budget")
        move = AdversaryMove(h, args.mode, args.budget, "file")
    else:
        r = args.budget if args.budget is not None else 0
        move = AdversarySpec(args.strategy, args.mode, args.variant).build(g, r, seed)
    modified = move.apply(g)
    out = args.out or "attack"
    Path(f"{out}.graph").write_text(serialize_edge_list(modified))
    payload = {"config": _resolved(args), "version": __version__, "move": move.to_json(),
               "modified_graph": f"{out}.graph", "modified_m": modified.m}
    Path(f"{out}.json").write_text(dumps(payload))
    print(f"H: {move.H.m} edges, Delta(H) = {move.delta}, budget {move.budget}")


def _sweep_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig(
        property=args.property,
        graph=GraphSource(args.model, args.n, args.p, args.d),
        adversary=AdversarySpec(args.strategy, args.mode, args.variant),
        budgets=list(args.budgets), budget_unit=args.budget_unit, trials=args.trials,
        seed=args.seed, chromatic_epsilon=args.chromatic_epsilon,
        posa_restarts=args.posa_restarts, posa_rotations=args.posa_rotations)
    cfg.validate()
    return cfg


def cmd_sweep(args) -> None:
    _resolve_seed(args)
    cfg = _sweep_config(args)
    curve, records = sweep(cfg, threads=args.threads)
    paths = write_results(args.out, curve, records)
    for rec in curve.records:
        lo, hi = rec.wilson_interval
        print(f"r={rec.r:<6d} destroyed {rec.destroyed}/{rec.trials}  [{lo:.3f}, {hi:.3f}]")
    print(f"r* = {curve.threshold}  r*/scale = {curve.threshold_normalized}")
    print("wrote " + ", ".join(paths.values()))


def cmd_validate(args) -> None:
    seed = _resolve_seed(args)
    rep = validate_lemma(args.lemma, args.n, args.p, args.trials, seed,
                         samples=args.samples, band=args.band, epsilon=args.epsilon)
    _emit({"config": _resolved(args), "version": __version__, "report": rep.to_json()}, args.out)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reslab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"reslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--seed", type=int, help="drawn from entropy and printed if omitted")
        p.add_argument("--threads", type=int, default=1)
        return p

    p = common(sub.add_parser("gen", help="sample a random graph"))
    p.add_argument("--model", choices=("gnp", "regular"), default="gnp")
    p.add_argument("--n", type=int, required=False, default=100)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = common(sub.add_parser("check", help="run a property checker on a graph file"))
    p.add_argument("--property", type=_property, default="perfect-matching")
    p.add_argument("--graph", required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--rotations", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("attack", help="build and apply an adversary move"))
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="random_degree_bounded")
    p.add_argument("--mode", choices=("delete", "add", "symdiff"), default="delete")
    p.add_argument("--variant", choices=("uniform", "lowest-degree"), default="uniform")
    p.add_argument("--budget", type=int)
    p.add_argument("--h-file", help="hand-written H; checked against --budget and --mode")
    p.add_argument("--out", help="output prefix (writes PREFIX.json and PREFIX.graph)")
    p.set_defaults(func=cmd_attack)

    p = common(sub.add_parser("sweep", help="Monte-Carlo budget sweep"))
    p.add_argument("--property", type=_property, default="perfect-matching")
    p.add_argument("--model", choices=("gnp", "regular"), default="gnp")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--strategy", choices=STRATEGIES, default="random_degree_bounded")
    p.add_argument("--mode", choices=("delete", "add", "symdiff"), default="delete")
    p.add_argument("--variant", choices=("uniform", "lowest-degree"), default="uniform")
    p.add_argument("--budgets", type=_budgets, default=[0.0])
    p.add_argument("--budget-unit", choices=("abs", "np"), default="abs")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--chromatic-epsilon", type=float, default=0.25)
    p.add_argument("--posa-restarts", type=int, default=20)
    p.add_argument("--posa-rotations", type=int)
    p.add_argument("--out", default="sweep", help="output prefix")
    p.set_defaults(func=cmd_sweep)

    p = common(sub.add_parser("validate", help="empirical lemma check"))
    p.add_argument("--lemma", choices=LEMMAS, required=False, default="properties-i")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--band", type=float)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)
    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    flat = parse_flat_config(Path(args.config).read_text())
    sub = parser._subparsers._group_actions[0].choices[args.command]  # noqa: SLF001
    known = {a.dest: a for a in sub._actions}  # noqa: SLF001
    defaults = {}
    for key, raw in flat.items():
        dest = key.replace("-", "_")
        action = known.get(dest)
        if action is None or dest in ("help", "config"):
            raise GraphError(f"config: unknown key {key!r} for {args.command}")
        if isinstance(action, argparse._StoreTrueAction):  # noqa: SLF001
            defaults[dest] = raw.lower() in ("1", "true", "yes")
        else:
            value = action.type(raw) if action.type else raw
            if action.choices is not None and value not in action.choices:
                raise GraphError(f"config: {key} must be one of {sorted(action.choices)}")
            defaults[dest] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config_file(parser, argv)
        args.func(args)
    except (GraphError, OSError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"reslab: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
