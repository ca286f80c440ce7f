"""Monte-Carlo resilience experiments: trials, budget sweeps, lemma validators.

A trial samples G, builds an adversary move H for each budget r, re-checks
Delta(H) <= r, applies the move and runs the property checker. A destroyed
outcome at budget r certifies resilience <= r for that sample; a survived
outcome only says the tried strategy failed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import __version__
from .adversaries import (AdversaryError, AdversaryMove, clique_addition, cut_bisection,
                          isolate_larger_half, min_degree_attack, random_degree_bounded)
from .coloring import dsatur, exact_chromatic, EXACT_CHROMATIC_CAP
from .generators import derive_seed, gnp, random_regular, rng_for
from .graph import Graph, GraphError, max_degree, min_degree, union
from .hamilton import exact_hamilton, posa_find_hamilton
from .matching import max_matching

PROPERTIES = ("perfect-matching", "hamiltonicity", "chromatic-inflation")
STRATEGIES = ("isolate_larger_half", "cut_bisection", "random_degree_bounded",
              "clique_addition", "min_degree_attack")
BUDGET_INDEPENDENT = ("isolate_larger_half", "cut_bisection")
HAMILTON_EXACT_CONFIRM = 12
WILSON_Z = 1.959963984540054


# -- configuration --------------------------------------------------------------


@dataclass
class GraphSource:
    model: str = "gnp"
    n: int = 100
    p: Optional[float] = None
    d: Optional[int] = None

    def sample(self, seed: int) -> Graph:
        if self.model == "gnp":
            if self.p is None:
                raise GraphError("gnp source needs p")
            return gnp(self.n, self.p, seed)
        if self.model == "regular":
            if self.d is None:
                raise GraphError("regular source needs d")
            return random_regular(self.n, self.d, seed)
        raise GraphError(f"unknown graph model {self.model!r}")

    @property
    def scale(self) -> float:
        """Expected degree: np for G(n,p), d for random regular."""
        return self.n * self.p if self.model == "gnp" else float(self.d or 0)


@dataclass
class AdversarySpec:
    strategy: str = "random_degree_bounded"
    mode: str = "delete"
    variant: str = "uniform"

    def build(self, g: Graph, r: int, seed: int) -> AdversaryMove:
        s = self.strategy
        if s == "isolate_larger_half":
            return isolate_larger_half(g, seed, self.variant)
        if s == "cut_bisection":
            return cut_bisection(g, seed)
        if s == "random_degree_bounded":
            return random_degree_bounded(g, r, self.mode, seed)
        if s == "clique_addition":
            return clique_addition(g, r, seed)
        if s == "min_degree_attack":
            return min_degree_attack(g, r, seed)
        raise AdversaryError(f"unknown strategy {s!r}")


@dataclass
class ExperimentConfig:
    property: str = "perfect-matching"
    graph: GraphSource = field(default_factory=GraphSource)
    adversary: AdversarySpec = field(default_factory=AdversarySpec)
    budgets: list[float] = field(default_factory=lambda: [0])
    budget_unit: str = "abs"
    trials: int = 10
    seed: int = 0
    chromatic_epsilon: float = 0.25
    posa_restarts: int = 20
    posa_rotations: Optional[int] = None

    def validate(self) -> None:
        if self.property not in PROPERTIES:
            raise GraphError(f"unknown property {self.property!r}")
        if self.adversary.strategy not in STRATEGIES:
            raise GraphError(f"unknown strategy {self.adversary.strategy!r}")
        if self.trials < 1:
            raise GraphError("trials must be >= 1")
        if not self.budgets:
            raise GraphError("budgets must be non-empty")
        if any(b < a for a, b in zip(self.budgets, self.budgets[1:])):
            raise GraphError("budgets must be ascending")
        if self.budget_unit not in ("abs", "np"):
            raise GraphError("budget_unit must be 'abs' or 'np'")

    def resolved_budgets(self) -> list[int]:
        if self.budget_unit == "abs":
            return [int(b) for b in self.budgets]
        return [int(round(b * self.graph.scale)) for b in self.budgets]

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        d["graph"] = GraphSource(**d.get("graph", {}))
        d["adversary"] = AdversarySpec(**d.get("adversary", {}))
        return cls(**d)

    # Flat key=value form used by config files and the CLI.
    FLAT_KEYS = {
        "property": ("property", str), "model": ("graph.model", str),
        "n": ("graph.n", int), "p": ("graph.p", float), "d": ("graph.d", int),
        "strategy": ("adversary.strategy", str), "mode": ("adversary.mode", str),
        "variant": ("adversary.variant", str), "budget_unit": ("budget_unit", str),
        "trials": ("trials", int), "seed": ("seed", int),
        "chromatic_epsilon": ("chromatic_epsilon", float),
        "posa_restarts": ("posa_restarts", int), "posa_rotations": ("posa_rotations", int),
        "budgets": ("budgets", lambda s: [float(x) for x in s.replace(",", " ").split()]),
    }

    @classmethod
    def from_flat(cls, flat: dict[str, str]) -> "ExperimentConfig":
        cfg = cls()
        for key, raw in flat.items():
            if key not in cls.FLAT_KEYS:
                raise GraphError(f"unknown config key {key!r}")
            path, conv = cls.FLAT_KEYS[key]
            try:
                value = conv(raw) if isinstance(raw, str) else raw
            except ValueError:
                raise GraphError(f"bad value for {key}: {raw!r}") from None
            target = cfg
            *head, last = path.split(".")
            for part in head:
                target = getattr(target, part)
            setattr(target, last, value)
        return cfg


def parse_flat_config(text: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GraphError(f"config line {lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# -- records ---------------------------------------------------------------------


@dataclass
class BudgetOutcome:
    r: int
    feasible: bool
    delta_h: int
    destroyed: bool
    certificate: str
    detail: dict = field(default_factory=dict)


@dataclass
class TrialRecord:
    trial: int
    seed: int
    n: int
    m: int
    base_holds: Optional[bool]
    outcomes: list[BudgetOutcome]
    wall_time: float = 0.0
    error: Optional[str] = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class BudgetSummary:
    r: int
    r_normalized: float
    trials: int
    destroyed: int
    destroyed_fraction: float
    wilson_interval: tuple[float, float]
    mean_delta_h: float


@dataclass
class ResilienceCurve:
    config: dict
    records: list[BudgetSummary]
    threshold: Optional[float]
    threshold_normalized: Optional[float]
    errors: int = 0
    version: str = __version__

    def to_json(self) -> dict:
        return asdict(self)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["budget", "destroyed_fraction", "ci_lo", "ci_hi"])
        for rec in self.records:
            w.writerow([rec.r, repr(rec.destroyed_fraction),
                        repr(rec.wilson_interval[0]), repr(rec.wilson_interval[1])])
        return buf.getvalue()


@dataclass
class LemmaReport:
    lemma: str
    n: int
    p: float
    trials: int
    pass_fraction: float
    worst_margin: float
    sample_pass_fraction: Optional[float] = None
    samples: int = 0
    seed: int = 0
    version: str = __version__

    def to_json(self) -> dict:
        return asdict(self)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- statistics ------------------------------------------------------------------


def wilson_interval(k: int, n: int, z: float = WILSON_Z) -> tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    ph = k / n
    denom = 1 + z * z / n
    center = (ph + z * z / (2 * n)) / denom
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def fit_threshold(budgets: list[float], fractions: list[float]) -> Optional[float]:
    """First crossing of 1/2, linearly interpolated between adjacent budgets."""
    for j, f in enumerate(fractions):
        if f >= 0.5:
            if j == 0:
                return float(budgets[0])
            r0, f0 = budgets[j - 1], fractions[j - 1]
            return r0 + (0.5 - f0) / (f - f0) * (budgets[j] - r0)
    return None


# -- property checks ---------------------------------------------------------------


def chromatic_estimate(g: Graph) -> tuple[int, bool]:
    """(chi-hat, exact?): exact for n <= 18, DSATUR otherwise."""
    if g.n <= EXACT_CHROMATIC_CAP:
        return exact_chromatic(g), True
    return dsatur(g).count, False


@dataclass
class InflationResult:
    destroyed: bool
    chi_g: int
    chi_union: int
    exact: bool


def chromatic_inflation_trial(g: Graph, h: Graph, epsilon: float) -> InflationResult:
    """Destroyed iff chi-hat(G ∪ H) > (1 + eps) chi-hat(G)."""
    chi_g, ex1 = chromatic_estimate(g)
    chi_u, ex2 = chromatic_estimate(union(g, h))
    return InflationResult(chi_u > (1 + epsilon) * chi_g, chi_g, chi_u, ex1 and ex2)


def _check_property(cfg: ExperimentConfig, g: Graph, seed: int,
                    chi_base: Optional[int] = None) -> tuple[bool, bool, dict]:
    """(holds, exact checker?, detail)."""
    if cfg.property == "perfect-matching":
        size = max_matching(g).size
        need = g.n // 2
        return size >= need, True, {"matching_size": size}
    if cfg.property == "hamiltonicity":
        cyc = posa_find_hamilton(g, seed, cfg.posa_restarts, cfg.posa_rotations)
        if cyc is not None:
            return True, True, {"found": True}
        if g.n <= HAMILTON_EXACT_CONFIRM:
            return exact_hamilton(g) is not None, True, {"found": False, "exact": True}
        return False, min_degree(g) < 2, {"found": False}
    chi, exact = chromatic_estimate(g)
    if chi_base is None:
        return True, exact, {"chi": chi}
    return chi <= (1 + cfg.chromatic_epsilon) * chi_base, exact, {"chi": chi}


def run_trial(cfg: ExperimentConfig, trial_index: int) -> TrialRecord:
    start = time.perf_counter()
    seed = derive_seed(cfg.seed, trial_index)
    budgets = cfg.resolved_budgets()
    check_seed = derive_seed(seed, 2)
    try:
        g = cfg.graph.sample(derive_seed(seed, 0))
    except GraphError as exc:
        return TrialRecord(trial_index, seed, cfg.graph.n, 0, None, [],
                           time.perf_counter() - start, f"generator: {exc}")
    base_holds, base_exact, base_detail = _check_property(cfg, g, check_seed)
    chi_base = base_detail.get("chi")
    outcomes = []
    error = None
    shared: Optional[AdversaryMove] = None
    shared_result: Optional[tuple] = None
    for k, r in enumerate(budgets):
        try:
            if cfg.adversary.strategy in BUDGET_INDEPENDENT:
                if shared is None:
                    shared = cfg.adversary.build(g, r, derive_seed(seed, 1))
                move = AdversaryMove(shared.H, shared.mode, r, shared.strategy, shared.info)
            else:
                move = cfg.adversary.build(g, r, derive_seed(seed, 1, k))
        except AdversaryError as exc:
            error = f"adversary: {exc}"
            break
        delta = move.delta
        try:
            move.check(g)
            feasible = True
        except AdversaryError:
            feasible = False
        if not feasible:
            holds, exact, detail = base_holds, base_exact, dict(base_detail)
        elif cfg.adversary.strategy in BUDGET_INDEPENDENT and shared_result is not None:
            holds, exact, detail = shared_result
        else:
            holds, exact, detail = _check_property(cfg, move.apply(g), check_seed, chi_base)
            if cfg.adversary.strategy in BUDGET_INDEPENDENT:
                shared_result = (holds, exact, detail)
        if holds:
            cert = "survived-heuristic"
        else:
            cert = "destroyed" if exact else "destroyed-heuristic"
        outcomes.append(BudgetOutcome(r, feasible, delta, not holds, cert, detail))
    return TrialRecord(trial_index, seed, g.n, g.m, base_holds, outcomes,
                       time.perf_counter() - start, error)


def run_trials(cfg: ExperimentConfig, threads: int = 1,
               progress: Optional[Callable[[TrialRecord], None]] = None) -> list[TrialRecord]:
    """All trials, ordered by index regardless of completion order."""
    cfg.validate()
    idx = list(range(cfg.trials))
    if threads <= 1:
        out = []
        for i in idx:
            rec = run_trial(cfg, i)
            if progress:
                progress(rec)
            out.append(rec)
        return out
    with ProcessPoolExecutor(max_workers=threads) as pool:
        out = list(pool.map(run_trial, [cfg] * len(idx), idx))
    if progress:
        for rec in out:
            progress(rec)
    return out


def summarize(cfg: ExperimentConfig, records: list[TrialRecord]) -> ResilienceCurve:
    budgets = cfg.resolved_budgets()
    scale = cfg.graph.scale
    summaries = []
    for k, r in enumerate(budgets):
        outs = [rec.outcomes[k] for rec in records if len(rec.outcomes) > k]
        hits = sum(o.destroyed for o in outs)
        frac = hits / len(outs) if outs else 0.0
        mean_delta = float(np.mean([o.delta_h for o in outs])) if outs else 0.0
        summaries.append(BudgetSummary(r, r / scale if scale else 0.0, len(outs), hits, frac,
                                       wilson_interval(hits, len(outs)), mean_delta))
    r_star = fit_threshold([s.r for s in summaries], [s.destroyed_fraction for s in summaries])
    norm = r_star / scale if (r_star is not None and scale) else None
    errors = sum(rec.error is not None for rec in records)
    return ResilienceCurve(cfg.to_json(), summaries, r_star, norm, errors)


def sweep(cfg: ExperimentConfig, threads: int = 1) -> tuple[ResilienceCurve, list[TrialRecord]]:
    records = run_trials(cfg, threads)
    return summarize(cfg, records), records


# -- lemma validators ----------------------------------------------------------------


def edge_cut(g: Graph, a) -> int:
    """e(A, V - A)."""
    mask = np.zeros(g.n, dtype=bool)
    mask[list(a)] = True
    u, v = g.edge_arrays()
    return int(np.count_nonzero(mask[u] != mask[v]))


def _disjoint_pair_edges(g: Graph, a: np.ndarray, b: np.ndarray) -> int:
    ma = np.zeros(g.n, dtype=bool)
    mb = np.zeros(g.n, dtype=bool)
    ma[a] = True
    mb[b] = True
    u, v = g.edge_arrays()
    return int(np.count_nonzero((ma[u] & mb[v]) | (mb[u] & ma[v])))


LEMMAS = ("properties-i", "properties-ii", "properties-iii", "prop-random-i", "le1")


def validate_lemma(lemma_id: str, n: int, p: float, trials: int, seed: int,
                   samples: int = 200, band: Optional[float] = None,
                   epsilon: float = 0.5) -> LemmaReport:
    """Empirical pass rate of one random-graph lemma.

    properties-i    min degree >= np - 2 sqrt(np ln n)
    properties-ii   max degree of G(n/2+1, p) <= np/2 + 2 sqrt(np ln n)
    properties-iii  sampled disjoint A, B of size s <= n/4:
                    e(A,B) <= s (np/4 + sqrt(2 np ln n))
    prop-random-i   sampled A: e(A, V-A) within (1 +- band) a(n-a)p,
                    band defaulting to 1/ln n
    le1             DSATUR count within (1 +- eps/4) np / (2 ln np)
    """
    if lemma_id not in LEMMAS:
        raise GraphError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMAS)}")
    if trials < 1:
        raise GraphError("trials must be >= 1")
    ln_n = math.log(n)
    np_ = n * p
    passes = 0
    worst = math.inf
    sample_hits = 0
    sample_total = 0
    for t in range(trials):
        tseed = derive_seed(seed, t)
        if lemma_id == "properties-ii":
            g = gnp(n // 2 + 1, p, tseed)
            margin = np_ / 2 + 2 * math.sqrt(np_ * ln_n) - max_degree(g)
            ok = margin >= 0
        else:
            g = gnp(n, p, tseed)
        if lemma_id == "properties-i":
            margin = min_degree(g) - (np_ - 2 * math.sqrt(np_ * ln_n))
            ok = margin >= 0
        elif lemma_id == "le1":
            chi = dsatur(g).count
            target = np_ / (2 * math.log(np_))
            margin = epsilon / 4 - abs(chi / target - 1)
            ok = margin > 0
        elif lemma_id in ("properties-iii", "prop-random-i"):
            rng = rng_for(tseed, 1)
            margin = math.inf
            ok = True
            for _ in range(samples):
                if lemma_id == "properties-iii":
                    s = int(rng.integers(1, max(1, n // 4) + 1))
                    perm = rng.permutation(n)
                    e = _disjoint_pair_edges(g, perm[:s], perm[s:2 * s])
                    m_s = s * (np_ / 4 + math.sqrt(2 * np_ * ln_n)) - e
                    good = m_s >= 0
                else:
                    a = int(rng.integers(1, n))
                    sub = rng.choice(n, size=a, replace=False)
                    expect = a * (n - a) * p
                    tol = band if band is not None else 1 / ln_n
                    m_s = tol - abs(edge_cut(g, sub) / expect - 1)
                    good = m_s >= 0
                sample_total += 1
                sample_hits += good
                ok = ok and good
                margin = min(margin, m_s)
        passes += ok
        worst = min(worst, margin)
    sample_frac = sample_hits / sample_total if sample_total else None
    return LemmaReport(lemma_id, n, p, trials, passes / trials, float(worst),
                       sample_frac, samples if sample_total else 0, seed)


# -- persistence --------------------------------------------------------------------


def write_results(prefix: str, curve: ResilienceCurve, records: list[TrialRecord]) -> dict[str, str]:
    """Write <prefix>.jsonl, <prefix>.summary.json and <prefix>.csv."""
    paths = {"records": f"{prefix}.jsonl", "summary": f"{prefix}.summary.json",
             "csv": f"{prefix}.csv"}
    with open(paths["records"], "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    with open(paths["summary"], "w") as fh:
        fh.write(dumps(curve.to_json()))
    with open(paths["csv"], "w") as fh:
        fh.write(curve.to_csv())
    return paths
