"""Hamilton cycles: Posa rotation-extension search, exact oracle, verification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .generators import rng_for
from .graph import Graph, GraphError, min_degree

EXACT_CAP = 20


@dataclass
class PathRecord:
    order: list[int]

    @property
    def on_path(self) -> set[int]:
        return set(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def is_valid(self, g: Graph) -> bool:
        o = self.order
        return len(set(o)) == len(o) and all(g.has_edge(a, b) for a, b in zip(o, o[1:]))


@dataclass
class RotationState:
    """Endpoint set of a path under rotations that keep ``fixed_end`` in place.

    ``transform_log[v]`` lists the pivot vertices that, applied to ``path`` in
    order, produce a path of the same vertex set ending at ``v``.
    """

    path: PathRecord
    fixed_end: int
    endpoint_set: set[int] = field(default_factory=set)
    transform_log: dict[int, tuple[int, ...]] = field(default_factory=dict)
    rounds: list[int] = field(default_factory=list)


def rotate(g: Graph, path: PathRecord, pivot_index: int) -> PathRecord:
    """Rotate with fixed first vertex: pivot v_i, broken edge (v_i, v_{i+1}).

    (v_1..v_i, v_l, v_{l-1}, .., v_{i+1}); requires v_i ~ v_l and i < l - 1.
    """
    o = path.order
    last = len(o) - 1
    if not 0 <= pivot_index < last - 1:
        raise GraphError(f"pivot index {pivot_index} must lie in [0, {last - 1})")
    if not g.has_edge(o[pivot_index], o[last]):
        raise GraphError(f"pivot {o[pivot_index]} is not adjacent to endpoint {o[last]}")
    return PathRecord(o[:pivot_index + 1] + o[:pivot_index:-1])


def replay(g: Graph, path: PathRecord, pivots: Sequence[int]) -> PathRecord:
    """Apply a sequence of rotations given by pivot vertex ids."""
    for v in pivots:
        path = rotate(g, path, path.order.index(v))
    return path


def rotation_closure(g: Graph, path: PathRecord, restricted: bool = False,
                     max_rounds: Optional[int] = None) -> RotationState:
    """Breadth-first closure of the free endpoint under rotations.

    ``restricted`` only allows breaking edges of the starting path. Each BFS
    level is one round; ``rounds`` records the endpoint-set size after each.
    """
    o = path.order
    orig = {frozenset(e) for e in zip(o, o[1:])}
    state = RotationState(path, o[0], {o[-1]}, {o[-1]: ()})
    frontier = [(o, ())]
    level = 0
    while frontier and (max_rounds is None or level < max_rounds):
        nxt = []
        for cur, log in frontier:
            pos = {v: i for i, v in enumerate(cur)}
            end = cur[-1]
            for i in sorted(pos[y] for y in g.adj[end] if y in pos):
                if i >= len(cur) - 2:
                    continue
                if restricted and frozenset((cur[i], cur[i + 1])) not in orig:
                    continue
                new_end = cur[i + 1]
                if new_end in state.endpoint_set:
                    continue
                new = cur[:i + 1] + cur[:i:-1]
                state.endpoint_set.add(new_end)
                state.transform_log[new_end] = log + (cur[i],)
                nxt.append((new, log + (cur[i],)))
        frontier = nxt
        level += 1
        state.rounds.append(len(state.endpoint_set))
    return state


def verify_hamilton_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    n = g.n
    if n < 3 or len(cycle) != n or sorted(cycle) != list(range(n)):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n))


class _Attempt:
    """One randomized rotation-extension run from a random start vertex."""

    def __init__(self, g: Graph, rng: np.random.Generator, budget: int, restricted: bool):
        self.g = g
        self.adj = g.adj
        self.nset = g.nbr_sets
        self.rng = rng
        self.budget = budget
        self.restricted = restricted
        self.rotations = 0
        n = g.n
        self.on = [False] * n
        self.free = [len(r) for r in self.adj]

    def _add(self, v: int) -> None:
        self.on[v] = True
        for u in self.adj[v]:
            self.free[u] -= 1

    def _extend(self, path: list[int]) -> None:
        on, free, adj = self.on, self.free, self.adj
        while True:
            end = path[-1]
            if free[end] == 0:
                return
            best = [u for u in adj[end] if not on[u]]
            low = min(free[u] for u in best)
            best = [u for u in best if free[u] == low]
            v = best[int(self.rng.integers(len(best)))] if len(best) > 1 else best[0]
            self._add(v)
            path.append(v)

    def _search(self, path: list[int], orig: set) -> tuple[str, Optional[list[int]], list]:
        """BFS over endpoints with path[0] fixed.

        Returns ("extend", P) when an endpoint has an off-path neighbour,
        ("cycle", P) when an endpoint is adjacent to path[0], ("budget", None)
        when rotations run out, or ("stuck", None) with the visited paths.
        """
        start = path[0]
        seen = {path[-1]}
        queue = deque([path])
        visited = [path]
        n_total = len(path)
        while queue:
            cur = queue.popleft()
            pos = {v: i for i, v in enumerate(cur)}
            end = cur[-1]
            for i in sorted(pos[y] for y in self.adj[end]):
                if i >= n_total - 2:
                    continue
                if self.restricted and frozenset((cur[i], cur[i + 1])) not in orig:
                    continue
                new_end = cur[i + 1]
                if new_end in seen:
                    continue
                seen.add(new_end)
                self.rotations += 1
                new = cur[:i + 1] + cur[:i:-1]
                if self.free[new_end]:
                    return "extend", new, visited
                if new_end in self.nset[start]:
                    return "cycle", new, visited
                if self.rotations >= self.budget:
                    return "budget", None, visited
                queue.append(new)
                visited.append(new)
        return "stuck", None, visited

    def _absorb(self, cyc: list[int]) -> Optional[list[int]]:
        # Open the cycle next to the lowest-indexed outside vertex touching it.
        on = self.on
        for w in range(self.g.n):
            if not on[w] and self.free[w] < len(self.adj[w]):
                c = min(u for u in self.adj[w] if on[u])
                k = cyc.index(c)
                self._add(w)
                return [w] + cyc[k:] + cyc[:k]
        return None

    def run(self) -> Optional[list[int]]:
        n = self.g.n
        v0 = int(self.rng.integers(n))
        self._add(v0)
        path = [v0]
        while self.rotations < self.budget:
            self._extend(path)
            path.reverse()
            self._extend(path)
            if len(path) == n and path[-1] in self.nset[path[0]]:
                return path
            if path[-1] in self.nset[path[0]]:
                outcome, new = "cycle", path
            else:
                orig = {frozenset(e) for e in zip(path, path[1:])} if self.restricted else set()
                outcome, new, pool = self._search(path, orig)
                while outcome == "stuck" and self.rotations < self.budget and pool:
                    # Re-anchor: fix the other end of a random endpoint path.
                    pick = pool[int(self.rng.integers(len(pool)))][::-1]
                    outcome, new, more = self._search(pick, orig)
                    pool = more[1:] or pool
                if outcome in ("stuck", "budget"):
                    return None
            if outcome == "cycle":
                if len(new) == n:
                    return new
                new = self._absorb(new)
                if new is None:
                    return None
            path = new
        return None


def posa_find_hamilton(g: Graph, seed: int, restart_budget: int = 20,
                       rotation_budget: Optional[int] = None,
                       restricted: bool = False) -> Optional[list[int]]:
    """Search for a Hamilton cycle by rotation-extension with restarts.

    Returns a verified cycle, or None when the budgets run out. None is not a
    proof that the graph is non-Hamiltonian.
    """
    n = g.n
    if n < 3 or min_degree(g) < 2:
        return None
    budget = rotation_budget if rotation_budget is not None else 50 * n
    for restart in range(restart_budget):
        cyc = _Attempt(g, rng_for(seed, restart), budget, restricted).run()
        if cyc is not None:
            if not verify_hamilton_cycle(g, cyc):
                raise AssertionError("rotation-extension produced an invalid cycle")
            return cyc
    return None


def exact_hamilton(g: Graph) -> Optional[list[int]]:
    """Exact decision by subset dynamic programming (n <= 20)."""
    n = g.n
    if n > EXACT_CAP:
        raise GraphError(f"exact_hamilton is capped at n = {EXACT_CAP}")
    if n < 3:
        return None
    nb = [sum(1 << u for u in row) for row in g.adj]
    full = (1 << n) - 1
    # ends[mask]: bitmask of v such that a path from 0 covers exactly mask and ends at v.
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, full + 1, 2):
        e = ends[mask]
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            nxt = nb[v] & ~mask
            while nxt:
                lb = nxt & -nxt
                ends[mask | lb] |= lb
                nxt ^= lb
    closing = ends[full] & nb[0]
    if not closing:
        return None
    v = (closing & -closing).bit_length() - 1
    mask = full
    cycle = [v]
    while v != 0:
        mask ^= 1 << v
        cand = ends[mask] & nb[v]
        v = (cand & -cand).bit_length() - 1
        cycle.append(v)
    cycle.reverse()
    return cycle
