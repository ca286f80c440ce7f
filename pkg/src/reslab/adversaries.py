"""Degree-bounded attacks: the modification graph H with Delta(H) <= r."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .generators import rng_for
from .graph import Graph, GraphError, max_degree, subtract, symmetric_difference, union

MODES = ("delete", "add", "symdiff")


class AdversaryError(GraphError):
    """An adversary move violates its budget or mode discipline."""


@dataclass
class AdversaryMove:
    H: Graph
    mode: str
    budget: int
    strategy: str = ""
    info: dict = field(default_factory=dict)

    @property
    def delta(self) -> int:
        return max_degree(self.H)

    def check(self, g: Optional[Graph] = None) -> None:
        """Raise unless Delta(H) <= budget and the mode discipline holds for g."""
        if self.mode not in MODES:
            raise AdversaryError(f"unknown mode {self.mode!r}")
        degs = self.H.degrees
        if degs.size and degs.max() > self.budget:
            v = int(np.argmax(degs))
            raise AdversaryError(
                f"vertex {v} has degree {int(degs[v])} in H, over budget {self.budget}")
        if g is None:
            return
        if g.n != self.H.n:
            raise AdversaryError(f"H has {self.H.n} vertices, target has {g.n}")
        hk, gk = self.H.edge_keys, g.edge_keys
        if self.mode == "delete":
            bad = ~np.isin(hk, gk, assume_unique=True)
        elif self.mode == "add":
            bad = np.isin(hk, gk, assume_unique=True)
        else:
            return
        if bad.any():
            k = int(hk[np.flatnonzero(bad)[0]])
            what = "not an edge of" if self.mode == "delete" else "already an edge of"
            raise AdversaryError(f"edge {k // g.n} {k % g.n} is {what} the target graph")

    def apply(self, g: Graph) -> Graph:
        self.check(g)
        if self.mode == "delete":
            return subtract(g, self.H)
        if self.mode == "add":
            return union(g, self.H)
        return symmetric_difference(g, self.H)

    def to_json(self) -> dict:
        return {"strategy": self.strategy, "mode": self.mode, "budget": self.budget,
                "delta": self.delta, "edges": [list(e) for e in self.H.edges()]}


def _induced_keys(g: Graph, inside: np.ndarray) -> np.ndarray:
    u, v = g.edge_arrays()
    return g.edge_keys[inside[u] & inside[v]]


def _peel_to(g: Graph, size: int, rng: np.random.Generator) -> np.ndarray:
    # Drop a vertex of largest degree inside the remaining set until `size` remain.
    indptr, indices = g.csr
    inside = np.ones(g.n, dtype=bool)
    ideg = g.degrees.copy()
    for _ in range(g.n - size):
        masked = np.where(inside, ideg, -1)
        top = np.flatnonzero(masked == masked.max())
        v = int(top[rng.integers(top.size)]) if top.size > 1 else int(top[0])
        inside[v] = False
        ideg[indices[indptr[v]:indptr[v + 1]]] -= 1
    return inside


def isolate_larger_half(g: Graph, seed: int, variant: str = "uniform") -> AdversaryMove:
    """H = G[X] for |X| = floor(n/2) + 1; X is independent in G - H.

    ``variant="uniform"`` draws X uniformly. ``"lowest-degree"`` builds X by
    repeatedly discarding the vertex of highest degree within the remaining
    set, which keeps low-degree vertices and lowers Delta(G[X]).
    """
    n = g.n
    if n < 4:
        raise AdversaryError(f"isolate_larger_half needs n >= 4, got {n}")
    size = n // 2 + 1
    rng = rng_for(seed)
    if variant == "uniform":
        inside = np.zeros(n, dtype=bool)
        inside[rng.choice(n, size=size, replace=False)] = True
    elif variant == "lowest-degree":
        inside = _peel_to(g, size, rng)
    else:
        raise AdversaryError(f"unknown isolate variant {variant!r}")
    h = Graph.from_keys(n, _induced_keys(g, inside))
    x = np.flatnonzero(inside).tolist()
    move = AdversaryMove(h, "delete", max_degree(h), "isolate_larger_half",
                         {"variant": variant, "X": x})
    move.check(g)
    return move


def cut_bisection(g: Graph, seed: int) -> AdversaryMove:
    """H = all edges across a random balanced bipartition."""
    n = g.n
    if n < 2:
        raise AdversaryError(f"cut_bisection needs n >= 2, got {n}")
    side = np.zeros(n, dtype=bool)
    side[rng_for(seed).permutation(n)[: n // 2]] = True
    u, v = g.edge_arrays()
    h = Graph.from_keys(n, g.edge_keys[side[u] != side[v]])
    move = AdversaryMove(h, "delete", max_degree(h), "cut_bisection",
                         {"A": np.flatnonzero(side).tolist()})
    move.check(g)
    return move


def _greedy_select(n: int, keys: np.ndarray, r: int) -> list[int]:
    hdeg = [0] * n
    open_vertices = n
    chosen = []
    for k in keys.tolist():
        a, b = divmod(k, n)
        if hdeg[a] < r and hdeg[b] < r:
            chosen.append(k)
            hdeg[a] += 1
            hdeg[b] += 1
            open_vertices -= (hdeg[a] == r) + (hdeg[b] == r)
            if open_vertices < 2:
                break
    return chosen


def _random_pair_keys(n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    a = rng.integers(0, n, size=size)
    b = rng.integers(0, n, size=size)
    ok = a != b
    a, b = a[ok], b[ok]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    return lo * n + hi


def random_degree_bounded(g: Graph, r: int, mode: str, seed: int) -> AdversaryMove:
    """Greedy random H with Delta(H) <= r.

    Delete mode scans the edges of G in random order; add mode scans random
    non-edges; symdiff mode scans random vertex pairs. A candidate is kept
    when both endpoints still have H-degree below r.
    """
    if r < 0:
        raise AdversaryError("budget must be non-negative")
    if mode not in MODES:
        raise AdversaryError(f"unknown mode {mode!r}")
    n = g.n
    rng = rng_for(seed)
    if r == 0 or n < 2:
        chosen: list[int] = []
    elif mode == "delete":
        chosen = _greedy_select(n, rng.permutation(g.edge_keys), r)
    else:
        # Streams of random pairs; duplicates are dropped, first occurrence wins.
        draws = max(4 * n * r, 1024)
        keys = _random_pair_keys(n, rng, draws)
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
        if mode == "add":
            keys = keys[~np.isin(keys, g.edge_keys)]
        chosen = _greedy_select(n, keys, r)
    h = Graph.from_keys(n, np.sort(np.asarray(chosen, dtype=np.int64)))
    move = AdversaryMove(h, mode, r, "random_degree_bounded")
    move.check(g)
    return move


def clique_addition(g: Graph, r: int, seed: int) -> AdversaryMove:
    """Add a clique on a random (r+1)-set, skipping pairs already in G."""
    n = g.n
    if r < 0 or r + 1 > n:
        raise AdversaryError(f"clique on r+1 = {r + 1} vertices does not fit in n = {n}")
    s = np.sort(rng_for(seed).choice(n, size=r + 1, replace=False))
    i, j = np.triu_indices(r + 1, k=1)
    keys = s[i] * n + s[j]
    keys = np.sort(keys[~np.isin(keys, g.edge_keys)])
    h = Graph.from_keys(n, keys)
    move = AdversaryMove(h, "add", r, "clique_addition", {"clique": s.tolist()})
    move.check(g)
    return move


def min_degree_attack(g: Graph, r: int, seed: int) -> AdversaryMove:
    """Starve low-degree vertices.

    Repeatedly take the vertex with the smallest degree in G - H that can
    still lose an edge and delete one of its edges to a random neighbour
    that can also lose one, until no legal deletion remains.
    """
    if r < 0:
        raise AdversaryError("budget must be non-negative")
    n = g.n
    rng = rng_for(seed)
    chosen: list[int] = []
    if r > 0 and g.m:
        res = [len(row) for row in g.adj]
        hdeg = [0] * n
        tiebreak = rng.permutation(n).tolist()
        nbrs = [list(row) for row in g.adj]
        for row in nbrs:
            rng.shuffle(row)
        ptr = [0] * n
        gone: set[int] = set()
        heap = [(res[v], tiebreak[v], v) for v in range(n) if res[v]]
        heapq.heapify(heap)
        while heap:
            d, _, v = heapq.heappop(heap)
            if d != res[v] or hdeg[v] >= r:
                continue
            row, i = nbrs[v], ptr[v]
            while i < len(row):
                u = row[i]
                key = min(u, v) * n + max(u, v)
                if hdeg[u] < r and key not in gone:
                    break
                i += 1
            if i == len(row):
                ptr[v] = i
                continue
            ptr[v] = i + 1
            gone.add(key)
            chosen.append(key)
            for w in (u, v):
                hdeg[w] += 1
                res[w] -= 1
                if hdeg[w] < r:
                    heapq.heappush(heap, (res[w], tiebreak[w], w))
    h = Graph.from_keys(n, np.sort(np.asarray(chosen, dtype=np.int64)))
    move = AdversaryMove(h, "delete", r, "min_degree_attack")
    move.check(g)
    return move
