"""Adjacency spectra, the mixing estimate, and sampled regularity/expansion probes."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np
import scipy.sparse as sp

from .generators import rng_for
from .graph import Graph, GraphError, VertexSet, edges_between, min_degree, vertex_set

DENSE_CAP = 5000


@dataclass
class SpectralProfile:
    n: int
    D: Optional[int]
    eigenvalues: list[float]
    lam: float
    m: int = 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


@dataclass
class RegularityReport:
    d: float
    epsilon: float
    worst_deviation: float
    samples: int
    min_degree_ok: bool
    certificate: str = "sampled"
    trace: list[float] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("trace")
        return d


def regular_degree(g: Graph) -> Optional[int]:
    if g.n == 0:
        return 0
    degs = g.degrees
    return int(degs[0]) if np.all(degs == degs[0]) else None


def adjacency_spectrum(g: Graph, cap: int = DENSE_CAP) -> SpectralProfile:
    """Full adjacency spectrum in descending order (dense eigensolve)."""
    if g.n > cap:
        raise GraphError(f"n = {g.n} exceeds the dense eigensolve cap {cap}; use lambda_estimate")
    if g.n == 0:
        return SpectralProfile(0, 0, [], 0.0, 0)
    vals = np.linalg.eigvalsh(g.dense())[::-1]
    lam = float(np.max(np.abs(vals[1:]))) if g.n > 1 else 0.0
    return SpectralProfile(g.n, regular_degree(g), vals.tolist(), lam, g.m)


def _sparse_adjacency(g: Graph) -> sp.csr_matrix:
    indptr, indices = g.csr
    return sp.csr_matrix((np.ones(indices.size), indices, indptr), shape=(g.n, g.n))


def lambda_estimate(g: Graph, iterations: int, seed: int) -> float:
    """Power-iteration estimate of max_{i>=2} |lambda_i| for a regular graph.

    Iterates the adjacency operator on the complement of the all-ones vector
    and returns ||Ax|| / ||x||, which never exceeds the true value.
    """
    if regular_degree(g) is None:
        raise GraphError("lambda_estimate needs a regular graph")
    if g.n < 2:
        return 0.0
    a = _sparse_adjacency(g)
    x = rng_for(seed).standard_normal(g.n)
    est = 0.0
    for _ in range(max(1, iterations)):
        x -= x.mean()
        norm = np.linalg.norm(x)
        if norm == 0.0:
            return 0.0
        x /= norm
        y = a @ x
        y -= y.mean()
        est = float(np.linalg.norm(y))
        x = y
    return est


def _mask(g: Graph, xs: Iterable[int]) -> np.ndarray:
    m = np.zeros(g.n, dtype=bool)
    idx = list(vertex_set(g, xs))
    m[idx] = True
    return m


def ordered_pair_count(g: Graph, b: Iterable[int], c: Iterable[int]) -> int:
    """Ordered pairs (u, v) with u in B, v in C and uv an edge.

    An edge inside B and C counts twice.
    """
    mb, mc = _mask(g, b), _mask(g, c)
    u, v = g.edge_arrays()
    return int(np.count_nonzero(mb[u] & mc[v]) + np.count_nonzero(mb[v] & mc[u]))


def mixing_discrepancy(g: Graph, profile: SpectralProfile, b: Iterable[int],
                       c: Iterable[int]) -> tuple[float, float]:
    """(|e(B,C) - D|B||C|/n|, lambda * sqrt(|B||C|)); lhs <= rhs on regular graphs."""
    if profile.n != g.n or profile.m != g.m or profile.D is None or profile.D != regular_degree(g):
        raise GraphError("spectral profile does not belong to this regular graph")
    b, c = vertex_set(g, b), vertex_set(g, c)
    e = ordered_pair_count(g, b, c)
    lhs = abs(e - profile.D * len(b) * len(c) / g.n)
    rhs = profile.lam * math.sqrt(len(b) * len(c))
    return lhs, rhs


def eps_regularity_probe(g: Graph, d: float, epsilon: float, samples: int,
                         seed: int) -> RegularityReport:
    """Sampled check of the (d, eps)-regular conditions.

    Draws disjoint S, T with |S|, |T| >= eps*n and tracks the worst
    |e(S,T)/(|S||T|) - d|. This certifies only the sampled pairs.
    """
    if not 0.0 < epsilon < 0.5:
        raise GraphError("epsilon must lie in (0, 1/2)")
    n = g.n
    rng = rng_for(seed)
    lo = max(1, math.ceil(epsilon * n))
    hi = max(lo, n // 2)
    worst = 0.0
    trace = []
    if 2 * lo <= n:
        for _ in range(samples):
            s_size = int(rng.integers(lo, hi + 1))
            t_size = int(rng.integers(lo, min(hi, n - s_size) + 1))
            perm = rng.permutation(n)
            s, t = perm[:s_size].tolist(), perm[s_size:s_size + t_size].tolist()
            dens = edges_between(g, s, t) / (s_size * t_size)
            worst = max(worst, abs(dens - d))
            trace.append(worst)
    ok = min_degree(g) >= d * n
    return RegularityReport(d, epsilon, worst, samples, ok, trace=trace)


def expansion_ratio(g: Graph, us: Iterable[int]) -> float:
    us = vertex_set(g, us)
    if not us:
        raise GraphError("expansion ratio of an empty set")
    nb = set()
    for v in us:
        nb.update(g.adj[v])
    return len(nb) / len(us)


def expansion_probe(g: Graph, set_size: int, samples: int, threshold: float,
                    seed: int) -> tuple[float, Optional[VertexSet]]:
    """Minimum sampled |N(U)|/|U| over random U of a fixed size.

    Returns the ratio and the first sampled set falling below ``threshold``.
    """
    if not 1 <= set_size <= g.n:
        raise GraphError(f"set_size must lie in [1, {g.n}]")
    rng = rng_for(seed)
    best = math.inf
    witness = None
    for _ in range(samples):
        u = rng.choice(g.n, size=set_size, replace=False).tolist()
        r = expansion_ratio(g, u)
        best = min(best, r)
        if witness is None and r < threshold:
            witness = vertex_set(g, u)
    return best, witness
