"""Maximum matchings in general graphs and Hall-condition witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .generators import derive_seed, random_equal_bipartition
from .graph import Graph, GraphError, VertexSet, vertex_set


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def is_perfect(self, n: int) -> bool:
        return 2 * self.size == n

    def is_near_perfect(self, n: int) -> bool:
        return 2 * self.size >= n - 1

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


def is_matching(g: Graph, pairs: Iterable[tuple[int, int]]) -> bool:
    seen: set[int] = set()
    for u, v in pairs:
        if u in seen or v in seen or u == v or not g.has_edge(u, v):
            return False
        seen.update((u, v))
    return True


def _greedy(adj: list, order: list[int], mate: list[int]) -> None:
    for v in order:
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    break


def _augment_from(adj, mate: list[int], root: int) -> bool:
    """One Edmonds search from an exposed vertex; augments on success."""
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    outer = [False] * n
    outer[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                in_blossom = [False] * n
                mark(v, b, to, in_blossom)
                mark(to, b, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = b
                        if not outer[i]:
                            outer[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                outer[mate[to]] = True
                queue.append(mate[to])
    return False


def _mates(g: Graph) -> list[int]:
    adj = g.adj
    mate = [-1] * g.n
    _greedy(adj, sorted(range(g.n), key=lambda v: len(adj[v])), mate)
    # A vertex with no augmenting path keeps none after later augmentations,
    # so each exposed vertex is searched once.
    for v in range(g.n):
        if mate[v] == -1 and adj[v]:
            _augment_from(adj, mate, v)
    return mate


def max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching (Edmonds' blossom search)."""
    mate = _mates(g)
    return Matching(tuple((v, mate[v]) for v in range(g.n) if mate[v] > v))


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and max_matching(g).is_perfect(g.n)


def has_near_perfect_matching(g: Graph) -> bool:
    """Matching leaving at most one vertex exposed (the odd-n analogue)."""
    return max_matching(g).is_near_perfect(g.n)


def crossing_graph(g: Graph, left: Iterable[int], right: Iterable[int]) -> Graph:
    left, right = vertex_set(g, left), vertex_set(g, right)
    if set(left) & set(right) or len(left) + len(right) != g.n:
        raise GraphError("left and right must partition the vertex set")
    on_left = [False] * g.n
    for v in left:
        on_left[v] = True
    return Graph.from_edges(g.n, [(u, v) for u in left for v in g.adj[u] if not on_left[v]])


def _hall_set(cross: Graph, mate: list[int], start: int) -> VertexSet:
    # Alternating-tree closure from an exposed vertex: S on start's side,
    # N(S) entirely matched back into S, so |N(S)| = |S| - 1.
    s = {start}
    seen_other: set[int] = set()
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in cross.adj[x]:
            if y not in seen_other:
                seen_other.add(y)
                z = mate[y]
                if z != -1 and z not in s:
                    s.add(z)
                    queue.append(z)
    return tuple(sorted(s))


def hall_witness(g: Graph, left: Iterable[int], right: Iterable[int]) -> Optional[VertexSet]:
    """A set S on one side with |N(S)| < |S| in the crossing graph, or None.

    None means the crossing bipartite graph has a perfect matching.
    """
    left, right = vertex_set(g, left), vertex_set(g, right)
    cross = crossing_graph(g, left, right)
    mate = _mates(cross)
    for side in (left, right):
        for v in side:
            if mate[v] == -1:
                return _hall_set(cross, mate, v)
    return None


@dataclass
class SplitOutcome:
    left: VertexSet
    right: VertexSet
    matching: Optional[Matching]
    witness: Optional[VertexSet]
    splits_tried: int


def bipartite_matching_via_random_split(g: Graph, seed: int, max_splits: int = 1) -> SplitOutcome:
    """Random halving, then a perfect matching across it or a Hall witness.

    With ``max_splits > 1`` a failed split is redrawn from a derived seed.
    """
    if g.n % 2:
        raise GraphError(f"random split needs even n, got {g.n}")
    for k in range(max(1, max_splits)):
        left, right = random_equal_bipartition(g.n, derive_seed(seed, k) if k else seed)
        cross = crossing_graph(g, left, right)
        mate = _mates(cross)
        exposed = [v for v in range(g.n) if mate[v] == -1]
        if not exposed:
            pairs = tuple((v, mate[v]) for v in range(g.n) if mate[v] > v)
            return SplitOutcome(left, right, Matching(pairs), None, k + 1)
    return SplitOutcome(left, right, None, _hall_set(cross, mate, exposed[0]), k + 1)
