"""Colourings, degeneracy, and the partition-and-patch colouring of G ∪ H."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .generators import rng_for
from .graph import Graph, GraphError, max_degree, union

EXACT_CHROMATIC_CAP = 18
INDEPENDENCE_CAP = 40
COVER_VERTEX_CAP = 12
COVER_SET_CAP = 10_000


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    count: int

    @classmethod
    def from_list(cls, colors: Sequence[int]) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        return cls(colors, len(set(colors)))

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "count": self.count}


@dataclass(frozen=True)
class DegeneracyCertificate:
    d: int
    elimination_order: tuple[int, ...]


def is_proper(g: Graph, colors: Sequence[int]) -> bool:
    if len(colors) != g.n:
        return False
    c = np.asarray(colors)
    u, v = g.edge_arrays()
    return not np.any(c[u] == c[v])


def _checked(g: Graph, colors: Sequence[int]) -> Coloring:
    if not is_proper(g, colors):
        raise AssertionError("colouring is not proper")
    return Coloring.from_list(colors)


def greedy_coloring(g: Graph, order: Sequence[int]) -> Coloring:
    """First-fit colouring in the given vertex order."""
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    colors = [-1] * g.n
    for v in order:
        used = {colors[u] for u in g.adj[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return _checked(g, colors)


def dsatur(g: Graph) -> Coloring:
    """DSATUR: colour the vertex with most distinct neighbour colours next.

    Ties go to the larger degree among uncoloured vertices, then the lower id.
    """
    n = g.n
    if n == 0:
        return Coloring((), 0)
    indptr, indices = g.csr
    width = max_degree(g) + 2
    forbidden = np.zeros((n, width), dtype=bool)
    sat = np.zeros(n, dtype=np.int64)
    udeg = g.degrees.copy()
    colors = np.full(n, -1, dtype=np.int64)
    uncolored = np.ones(n, dtype=bool)
    for _ in range(n):
        key = np.where(uncolored, sat * (n + 1) + udeg, -1)
        v = int(np.argmax(key))
        c = int(np.argmin(forbidden[v]))
        colors[v] = c
        uncolored[v] = False
        nb = indices[indptr[v]:indptr[v + 1]]
        if nb.size:
            udeg[nb] -= 1
            fresh = nb[~forbidden[nb, c]]
            sat[fresh] += 1
            forbidden[nb, c] = True
    return _checked(g, colors.tolist())


def degeneracy(g: Graph) -> DegeneracyCertificate:
    """Minimum-degree peeling; d is the largest degree seen at removal time."""
    n = g.n
    deg = [len(r) for r in g.adj]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v, k in enumerate(deg):
        buckets[k].add(v)
    removed = [False] * n
    order = []
    d = 0
    low = 0
    for _ in range(n):
        low = max(0, low - 1)
        while not buckets[low]:
            low += 1
        v = buckets[low].pop()
        removed[v] = True
        order.append(v)
        d = max(d, low)
        for u in g.adj[v]:
            if not removed[u]:
                buckets[deg[u]].remove(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    return DegeneracyCertificate(d, tuple(order))


def degeneracy_coloring(g: Graph) -> Coloring:
    """At most d+1 colours: first-fit in reverse elimination order."""
    cert = degeneracy(g)
    return greedy_coloring(g, cert.elimination_order[::-1])


def independence_number_exact(g: Graph) -> int:
    """Exact alpha(G) by branch and bound over bitmasks (n <= 40)."""
    if g.n > INDEPENDENCE_CAP:
        raise GraphError(f"independence_number_exact is capped at n = {INDEPENDENCE_CAP}")
    return _max_independent(g.n, [sum(1 << u for u in row) for row in g.adj])


def _max_independent(n: int, nb: list[int]) -> int:
    best = 0

    def rec(mask: int, size: int) -> None:
        nonlocal best
        while mask:
            if size + bin(mask).count("1") <= best:
                return
            # Vertices of degree <= 1 inside mask are always safe to take.
            forced = -1
            top, top_deg = -1, -1
            m = mask
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                k = bin(nb[v] & mask).count("1")
                if k <= 1:
                    forced = v
                    break
                if k > top_deg:
                    top, top_deg = v, k
            if forced >= 0:
                mask &= ~(nb[forced] | (1 << forced))
                size += 1
                continue
            rec(mask & ~(nb[top] | (1 << top)), size + 1)
            mask &= ~(1 << top)
        best = max(best, size)

    rec((1 << n) - 1, 0)
    return best


def _clique_number(g: Graph) -> int:
    full = (1 << g.n) - 1
    comp = [(full ^ sum(1 << u for u in row)) & ~(1 << v) for v, row in enumerate(g.adj)]
    return _max_independent(g.n, comp)


def exact_chromatic(g: Graph) -> int:
    """Exact chi(G): DSATUR-ordered branch and bound, clique lower bound."""
    n = g.n
    if n > EXACT_CHROMATIC_CAP:
        raise GraphError(f"exact_chromatic is capped at n = {EXACT_CHROMATIC_CAP}")
    if n == 0:
        return 0
    if g.m == 0:
        return 1
    best = dsatur(g).count
    lower = _clique_number(g)
    if lower == best:
        return best
    adj = g.adj
    colors = [-1] * n

    def pick() -> int:
        top, key = -1, (-1, -1)
        for v in range(n):
            if colors[v] < 0:
                k = (len({colors[u] for u in adj[v] if colors[u] >= 0}), len(adj[v]))
                if k > key:
                    top, key = v, k
        return top

    def rec(done: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if done == n:
            best = used
            return
        v = pick()
        taken = {colors[u] for u in adj[v]}
        for c in range(used + 1):
            if c in taken or (c == used and used + 1 >= best):
                continue
            colors[v] = c
            rec(done + 1, max(used, c + 1))
            colors[v] = -1
            if best == lower:
                return

    rec(0, 0)
    return best


# -- colouring G ∪ H -----------------------------------------------------------


@dataclass
class UnionColoring:
    coloring: Coloring
    parts: int
    part_colors: list[int]
    monochromatic_edges: int
    patch_size: int
    patch_colors: int
    np_used: float

    def to_json(self) -> dict:
        return {
            "count": self.coloring.count,
            "parts": self.parts,
            "part_colors": self.part_colors,
            "monochromatic_edges": self.monochromatic_edges,
            "patch_size": self.patch_size,
            "patch_colors": self.patch_colors,
            "np": self.np_used,
        }


def part_count(np_value: float, d: int, n: int) -> int:
    """s = 2 d log^2(np), rounded, at least 1 and at most n."""
    return int(min(max(1, round(2 * d * math.log(np_value) ** 2)), max(n, 1)))


def _subgraphs_by_label(g: Graph, labels: np.ndarray, k: int) -> list[tuple[Graph, np.ndarray]]:
    # Induced subgraphs G[label == i], relabelled, in one vectorised pass.
    members = [np.flatnonzero(labels == i) for i in range(k)]
    local = np.empty(g.n, dtype=np.int64)
    for idx in members:
        local[idx] = np.arange(idx.size)
    u, v = g.edge_arrays()
    same = labels[u] == labels[v]
    u, v = u[same], v[same]
    lab = labels[u]
    order = np.argsort(lab, kind="stable")
    u, v, lab = u[order], v[order], lab[order]
    bounds = np.searchsorted(lab, np.arange(k + 1))
    out = []
    for i, idx in enumerate(members):
        a, b = bounds[i], bounds[i + 1]
        sub = Graph.from_arrays(idx.size, local[u[a:b]], local[v[a:b]], check=False)
        out.append((sub, idx))
    return out


def partition_color_union(g: Graph, h: Graph, d: int, seed: int,
                          p: Optional[float] = None) -> UnionColoring:
    """Proper colouring of G ∪ H for Delta(H) <= d.

    Split the vertices at random into s = 2 d log^2(np) near-equal parts,
    colour each G[V_i] by DSATUR with its own palette, then recolour the
    endpoints U of H-edges left monochromatic: (G ∪ H)[U] is coloured in
    degeneracy order with fresh colours.
    """
    if g.n != h.n:
        raise GraphError(f"vertex counts differ: {g.n} vs {h.n}")
    if max_degree(h) > d:
        raise GraphError(f"Delta(H) = {max_degree(h)} exceeds d = {d}")
    n = g.n
    np_value = n * p if p is not None else (2 * g.m / n if n else 0.0)
    if np_value <= math.e:
        raise GraphError(f"np = {np_value:.3g} must exceed e for the part count")
    s = part_count(np_value, d, n)
    rng = rng_for(seed)
    labels = np.empty(n, dtype=np.int64)
    labels[rng.permutation(n)] = np.arange(n) % s

    colors = np.zeros(n, dtype=np.int64)
    offset = 0
    part_colors = []
    for sub, idx in _subgraphs_by_label(g, labels, s):
        col = dsatur(sub)
        colors[idx] = np.asarray(col.colors, dtype=np.int64) + offset
        offset += col.count
        part_colors.append(col.count)

    hu, hv = h.edge_arrays()
    mono = colors[hu] == colors[hv]
    patch = np.unique(np.concatenate([hu[mono], hv[mono]]))
    patch_colors = 0
    gh = union(g, h)
    if patch.size:
        sub, old = gh.induced(patch.tolist())
        col = degeneracy_coloring(sub)
        colors[np.asarray(old)] = np.asarray(col.colors) + offset
        patch_colors = col.count
    coloring = _checked(gh, colors.tolist())
    return UnionColoring(coloring, s, part_colors, int(mono.sum()), int(patch.size),
                         patch_colors, float(np_value))


# -- independent sets and covers ------------------------------------------------


def _log_k0_margin(n: int, p: float, k: int) -> float:
    log_binom = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return log_binom + k * (k - 1) / 2 * math.log1p(-p) - 4 * math.log(n)


def k0_satisfied(n: int, p: float, k: int) -> bool:
    """Does C(n,k) (1-p)^C(k,2) >= n^4 hold (in log domain)?"""
    if k < 0 or k > n:
        return False
    return _log_k0_margin(n, p, k) >= 0


def k0(n: int, p: float) -> int:
    """Largest k with C(n,k) (1-p)^C(k,2) >= n^4; 0 when no k qualifies."""
    if not 0.0 < p < 1.0:
        raise GraphError(f"k0 needs 0 < p < 1, got {p}")
    best = 0
    for k in range(1, n + 1):
        if k0_satisfied(n, p, k):
            best = k
    return best


def independent_k_sets(g: Graph, k: int, cap: int = COVER_SET_CAP) -> list[tuple[int, ...]]:
    nbs = g.nbr_sets
    out = []
    for combo in itertools.combinations(range(g.n), k):
        if all(b not in nbs[a] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
            if len(out) > cap:
                raise GraphError(f"more than {cap} independent {k}-sets")
    return out


def cover_number_bruteforce(g: Graph, k: int, return_cover: bool = False):
    """Minimum number of vertex pairs meeting every independent k-set.

    Exact branch and bound over pairs; intended for n <= 12.
    """
    if g.n > COVER_VERTEX_CAP:
        raise GraphError(f"cover_number_bruteforce is capped at n = {COVER_VERTEX_CAP}")
    sets = independent_k_sets(g, k)
    if not sets:
        return (0, []) if return_cover else 0
    if k < 2:
        raise GraphError("independent sets of size < 2 contain no pair to cover")
    pair_hits: dict[tuple[int, int], int] = {}
    set_pairs = []
    for i, s in enumerate(sets):
        ps = list(itertools.combinations(s, 2))
        set_pairs.append(ps)
        for pr in ps:
            pair_hits[pr] = pair_hits.get(pr, 0) | (1 << i)
    max_hit = max(bin(m).count("1") for m in pair_hits.values())

    def packing_bound(uncovered: int) -> int:
        # Sets sharing no pair need distinct cover pairs.
        used: set = set()
        count = 0
        m = uncovered
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            if not any(pr in used for pr in set_pairs[i]):
                used.update(set_pairs[i])
                count += 1
        return max(count, -(-bin(uncovered).count("1") // max_hit))

    # Greedy cover as the initial incumbent.
    uncovered = (1 << len(sets)) - 1
    greedy = []
    while uncovered:
        pr = max(pair_hits, key=lambda q: bin(pair_hits[q] & uncovered).count("1"))
        greedy.append(pr)
        uncovered &= ~pair_hits[pr]
    best = list(greedy)

    def rec(uncovered: int, chosen: list) -> None:
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + packing_bound(uncovered) >= len(best):
            return
        low = uncovered & -uncovered
        i = low.bit_length() - 1
        for pr in sorted(set_pairs[i], key=lambda q: -bin(pair_hits[q] & uncovered).count("1")):
            chosen.append(pr)
            rec(uncovered & ~pair_hits[pr], chosen)
            chosen.pop()

    rec((1 << len(sets)) - 1, [])
    return (len(best), best) if return_cover else len(best)
