"""Seeded random graph sources.

All randomness comes from numpy's PCG64 bit generator seeded with a single
unsigned 64-bit integer. Identical (parameters, seed) give identical graphs
within this implementation; no cross-implementation stream compatibility is
attempted.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, GraphError, VertexSet

SEED_MASK = (1 << 64) - 1
_GEOMETRIC_CUTOFF = 0.1


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed``, optionally on a derived sub-stream."""
    ss = np.random.SeedSequence(int(seed) & SEED_MASK, spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed: int, *stream: int) -> int:
    """Deterministic child seed, e.g. per trial or per restart."""
    ss = np.random.SeedSequence(int(seed) & SEED_MASK, spawn_key=tuple(int(s) for s in stream))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _pair_from_index(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Row-major upper triangle: row i holds pairs (i, i+1..n-1).
    i = np.arange(n, dtype=np.int64)
    offsets = i * (2 * n - i - 1) // 2
    rows = np.searchsorted(offsets, idx, side="right") - 1
    cols = idx - offsets[rows] + rows + 1
    return rows, cols


def gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph G(n, p)."""
    if n < 0:
        raise GraphError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph.empty(n)
    if p == 1.0:
        return Graph.complete(n)
    rng = rng_for(seed)
    if p < _GEOMETRIC_CUTOFF:
        # Geometric skipping: gaps between successive present pairs.
        chunks = []
        pos = -1
        batch = max(1024, int(total * p * 1.1) + 64)
        while True:
            gaps = rng.geometric(p, size=batch)
            idx = pos + np.cumsum(gaps)
            if idx[-1] >= total:
                chunks.append(idx[idx < total])
                break
            chunks.append(idx)
            pos = int(idx[-1])
        idx = np.concatenate(chunks)
        u, v = _pair_from_index(n, idx)
    else:
        us, vs = [], []
        for i in range(n - 1):
            hits = np.flatnonzero(rng.random(n - 1 - i) < p)
            us.append(np.full(hits.size, i, dtype=np.int64))
            vs.append(hits + i + 1)
        u, v = np.concatenate(us), np.concatenate(vs)
    return Graph.from_keys(n, u * n + v)


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Random simple d-regular graph from the pairing model.

    Stubs are paired uniformly; pairs forming loops or repeated edges are
    rejected and their stubs re-paired. A round that cannot finish restarts
    from scratch. After ``10 * n * d`` re-pairing rounds in total the call
    gives up.
    """
    if n < 0 or d < 0:
        raise GraphError("n and d must be non-negative")
    if (n * d) % 2:
        raise GraphError(f"n*d = {n * d} is odd")
    if n and d >= n:
        raise GraphError(f"degree {d} must be smaller than n = {n}")
    if d == 0 or n == 0:
        return Graph.empty(n)
    rng = rng_for(seed)
    cap = 10 * n * d
    rounds = 0
    while rounds < cap:
        edges: set[int] = set()
        stubs = np.repeat(np.arange(n, dtype=np.int64), d)
        while stubs.size:
            rounds += 1
            rng.shuffle(stubs)
            a, b = stubs[0::2], stubs[1::2]
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            leftover = []
            for x, y in zip(lo.tolist(), hi.tolist()):
                key = x * n + y
                if x != y and key not in edges:
                    edges.add(key)
                else:
                    leftover.append(x)
                    leftover.append(y)
            if not leftover:
                return Graph.from_keys(n, np.sort(np.fromiter(edges, dtype=np.int64)))
            if not _repairable(n, edges, leftover) or rounds >= cap:
                break
            stubs = np.asarray(leftover, dtype=np.int64)
    raise GraphError(f"pairing model failed after {cap} re-pairing rounds")


def _repairable(n: int, edges: set[int], leftover: list[int]) -> bool:
    # Some pair of distinct leftover vertices must still be a non-edge.
    vs = sorted(set(leftover))
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            if x * n + y not in edges:
                return True
    return False


def random_equal_bipartition(n: int, seed: int) -> tuple[VertexSet, VertexSet]:
    """Uniformly random split of [n] into two halves of size n/2."""
    if n < 0 or n % 2:
        raise GraphError(f"random_equal_bipartition needs even n, got {n}")
    perm = rng_for(seed).permutation(n)
    half = n // 2
    return tuple(sorted(perm[:half].tolist())), tuple(sorted(perm[half:].tolist()))
