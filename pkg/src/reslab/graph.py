"""Undirected simple graphs on vertices 0..n-1.

A :class:`Graph` is immutable. Adjacency lists are sorted tuples, so two graphs
compare equal exactly when they have the same edge set. Edge-set algebra
(subtract, symmetric difference, union) goes through sorted int64 edge keys
``u * n + v`` with ``u < v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

VertexSet = tuple[int, ...]


class GraphError(ValueError):
    """Malformed graph input or a violated precondition."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, rejecting self-loops, duplicates and bad ids."""
        pairs = list(edges)
        if not pairs:
            return cls.empty(n)
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return cls.from_arrays(n, arr[:, 0], arr[:, 1], check=True)

    @classmethod
    def from_arrays(cls, n: int, u, v, check: bool = True) -> "Graph":
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if check:
            if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
                raise GraphError(f"vertex id out of range [0, {n})")
            if np.any(u == v):
                i = int(np.flatnonzero(u == v)[0])
                raise GraphError(f"self-loop at vertex {int(u[i])}")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        keys.sort()
        if check and keys.size > 1:
            dup = np.flatnonzero(keys[1:] == keys[:-1])
            if dup.size:
                k = int(keys[dup[0]])
                raise GraphError(f"duplicate edge {k // n} {k % n}")
        return cls.from_keys(n, keys)

    @classmethod
    def from_keys(cls, n: int, keys: np.ndarray) -> "Graph":
        """Build from sorted, unique edge keys (trusted)."""
        keys = np.asarray(keys, dtype=np.int64)
        if n == 0 or keys.size == 0:
            g = cls.empty(n)
        else:
            # Both orientations as src*n + dst; one flat sort gives CSR order.
            both = np.concatenate([keys, (keys % n) * n + keys // n])
            both.sort()
            src, dst = both // n, both % n
            counts = np.bincount(src, minlength=n)
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            flat, bounds = dst.tolist(), indptr.tolist()
            adj = tuple(tuple(flat[bounds[i]:bounds[i + 1]]) for i in range(n))
            g = cls(n, adj, int(keys.size))
            g.__dict__["csr"] = (indptr, dst)
            g.__dict__["degrees"] = counts.astype(np.int64)
        g.__dict__["edge_keys"] = keys
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        return cls(n, tuple(() for _ in range(n)), 0)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # -- equality -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- cached views -------------------------------------------------------

    @cached_property
    def edge_keys(self) -> np.ndarray:
        n = self.n
        keys = [u * n + v for u, row in enumerate(self.adj) for v in row if u < v]
        return np.asarray(keys, dtype=np.int64)

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(r) for r in self.adj), dtype=np.int64, count=self.n)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays of the adjacency structure."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        if self.m:
            indices = np.fromiter((v for row in self.adj for v in row),
                                  dtype=np.int64, count=2 * self.m)
        else:
            indices = np.zeros(0, dtype=np.int64)
        return indptr, indices

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        keys = self.edge_keys
        return keys // max(self.n, 1), keys % max(self.n, 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adj) for v in row if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr_sets[u]

    def dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        u, v = self.edge_arrays()
        a[u, v] = 1.0
        a[v, u] = 1.0
        return a

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1, with the old ids in order."""
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[w]) for u in old for w in self.adj[u]
                 if u < w and w in new_id]
        return Graph.from_edges(len(old), edges), old


# -- primitives -------------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range [0, {g.n})")


def vertex_set(g: Graph, members: Iterable[int]) -> VertexSet:
    """Canonical sorted, duplicate-free vertex set of ``g``."""
    out = tuple(sorted(set(int(x) for x in members)))
    if out and (out[0] < 0 or out[-1] >= g.n):
        raise GraphError(f"vertex set has ids outside [0, {g.n})")
    return out


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adj[v])


def max_degree(g: Graph) -> int:
    return int(g.degrees.max()) if g.n else 0


def min_degree(g: Graph) -> int:
    return int(g.degrees.min()) if g.n else 0


def neighborhood_of_set(g: Graph, xs: Iterable[int]) -> VertexSet:
    """N(X): all neighbours of members of X; may intersect X."""
    out: set[int] = set()
    for v in vertex_set(g, xs):
        out.update(g.adj[v])
    return tuple(sorted(out))


def edges_within(g: Graph, xs: Iterable[int]) -> int:
    xs = vertex_set(g, xs)
    if len(xs) < 2:
        return 0
    mask = np.zeros(g.n, dtype=bool)
    mask[list(xs)] = True
    u, v = g.edge_arrays()
    return int(np.count_nonzero(mask[u] & mask[v]))


def edges_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    """e(A, B) for disjoint A and B. Overlapping sets are rejected."""
    a, b = vertex_set(g, a), vertex_set(g, b)
    common = set(a) & set(b)
    if common:
        raise GraphError(f"edges_between needs disjoint sets; both contain {min(common)}")
    if not a or not b:
        return 0
    ma = np.zeros(g.n, dtype=bool)
    mb = np.zeros(g.n, dtype=bool)
    ma[list(a)] = True
    mb[list(b)] = True
    u, v = g.edge_arrays()
    return int(np.count_nonzero((ma[u] & mb[v]) | (mb[u] & ma[v])))


def _same_order(g: Graph, h: Graph) -> None:
    if g.n != h.n:
        raise GraphError(f"vertex counts differ: {g.n} vs {h.n}")


def subtract(g: Graph, h: Graph) -> Graph:
    """G - H; every edge of H must be an edge of G."""
    _same_order(g, h)
    inside = np.isin(h.edge_keys, g.edge_keys, assume_unique=True)
    if not inside.all():
        k = int(h.edge_keys[np.flatnonzero(~inside)[0]])
        raise GraphError(f"edge {k // g.n} {k % g.n} of H is not an edge of G")
    keep = ~np.isin(g.edge_keys, h.edge_keys, assume_unique=True)
    return Graph.from_keys(g.n, g.edge_keys[keep])


def symmetric_difference(g: Graph, h: Graph) -> Graph:
    _same_order(g, h)
    return Graph.from_keys(g.n, np.setxor1d(g.edge_keys, h.edge_keys, assume_unique=True))


def union(g: Graph, h: Graph) -> Graph:
    _same_order(g, h)
    return Graph.from_keys(g.n, np.union1d(g.edge_keys, h.edge_keys))


# -- edge-list text format --------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by m lines ``"u v"`` (u < v)."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise GraphError("line 1: missing header 'n m'")
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise GraphError(f"line {lineno}: malformed header {header!r}") from None
    if n < 0 or m < 0:
        raise GraphError(f"line {lineno}: negative header values")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header declares {m} edges but {len(body)} edge lines follow")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise GraphError(f"line {lineno}: malformed edge {ln!r}") from None
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex id out of range [0, {n})")
        if u > v:
            raise GraphError(f"line {lineno}: edge must be written with u < v")
        if (u, v) in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
