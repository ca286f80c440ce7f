import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_hamiltonian, graphs, random_graph, rng
from reslab.generators import gnp
from reslab.graph import Graph, GraphError, min_degree
from reslab.hamilton import (PathRecord, exact_hamilton, posa_find_hamilton, replay, rotate,
                             rotation_closure, verify_hamilton_cycle)


def test_rotate_example_and_involution():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    p = PathRecord([0, 1, 2, 3])
    q = rotate(g, p, 1)
    assert q.order == [0, 1, 3, 2]
    assert rotate(g, q, 1).order == p.order
    with pytest.raises(GraphError):
        rotate(g, p, 2)
    with pytest.raises(GraphError):
        rotate(g, p, 0)


def _random_path(g, r):
    order = [int(r.integers(g.n))]
    seen = set(order)
    while True:
        nxt = [u for u in g.adj[order[-1]] if u not in seen]
        if not nxt:
            return PathRecord(order)
        v = int(nxt[int(r.integers(len(nxt)))])
        order.append(v)
        seen.add(v)


def test_random_rotations_preserve_path():
    r = rng(5)
    done = 0
    while done < 10_000:
        g = gnp(30, 0.3, int(r.integers(1 << 30)))
        p = _random_path(g, r)
        for _ in range(50):
            end = p.order[-1]
            piv = [i for i, v in enumerate(p.order[:-2]) if g.has_edge(v, end)]
            if not piv:
                break
            q = rotate(g, p, piv[int(r.integers(len(piv)))])
            assert q.is_valid(g) and len(q) == len(p)
            assert q.on_path == p.on_path and q.order[0] == p.order[0]
            p = q
            done += 1


def test_closure_replay_and_growth():
    for s in range(20):
        g = gnp(40, 0.15, s)
        p = _random_path(g, rng(s))
        for restricted in (False, True):
            st_ = rotation_closure(g, p, restricted=restricted)
            assert all(a <= b for a, b in zip(st_.rounds, st_.rounds[1:]))
            for end, pivots in st_.transform_log.items():
                q = replay(g, p, pivots)
                assert q.order[-1] == end and q.order[0] == p.order[0] and q.is_valid(g)
        assert rotation_closure(g, p, restricted=True).endpoint_set <= \
            rotation_closure(g, p).endpoint_set


def test_posa_examples():
    c5 = Graph.cycle(5)
    cyc = posa_find_hamilton(c5, 0)
    assert verify_hamilton_cycle(c5, cyc)
    assert verify_hamilton_cycle(Graph.complete(4), posa_find_hamilton(Graph.complete(4), 1))
    pet = Graph.petersen()
    assert posa_find_hamilton(pet, 0) is None and exact_hamilton(pet) is None
    assert posa_find_hamilton(Graph.path(5), 0) is None


def test_exact_examples():
    assert exact_hamilton(Graph.path(4)) is None
    assert verify_hamilton_cycle(Graph.cycle(6), exact_hamilton(Graph.cycle(6)))
    with pytest.raises(GraphError):
        exact_hamilton(Graph.empty(21))


def test_verify_examples():
    c5 = Graph.cycle(5)
    assert verify_hamilton_cycle(c5, [0, 1, 2, 3, 4])
    assert not verify_hamilton_cycle(c5, [0, 1, 2, 3, 3])
    assert not verify_hamilton_cycle(c5, [0, 2, 1, 3, 4])


def test_exact_against_permutations_all_small_graphs():
    for n in range(3, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            cyc = exact_hamilton(g)
            assert (cyc is not None) == brute_hamiltonian(g)
            if cyc is not None:
                assert verify_hamilton_cycle(g, cyc)


def test_hamiltonian_class_counts():
    # Connected isomorphism classes on 3, 4, 5 vertices that are Hamiltonian: 1, 3, 8.
    for n, expected in ((3, 1), (4, 3), (5, 8)):
        reps = []
        for edges in itertools.chain.from_iterable(
                itertools.combinations(itertools.combinations(range(n), 2), k)
                for k in range(n - 1, n * (n - 1) // 2 + 1)):
            ng = nx.Graph(list(edges))
            ng.add_nodes_from(range(n))
            if nx.is_connected(ng) and not any(nx.is_isomorphic(ng, r) for r in reps):
                reps.append(ng)
        ham = sum(exact_hamilton(Graph.from_edges(n, list(r.edges()))) is not None for r in reps)
        assert ham == expected


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=3, max_n=9), st.integers(0, 2**32))
def test_posa_sound_and_never_beats_exact(g, seed):
    cyc = posa_find_hamilton(g, seed, restart_budget=5)
    if cyc is not None:
        assert verify_hamilton_cycle(g, cyc)
        assert exact_hamilton(g) is not None


def test_restricted_mode_still_valid():
    hits = 0
    for s in range(10):
        g = gnp(120, 0.15, s)
        cyc = posa_find_hamilton(g, s, restricted=True)
        if cyc is not None:
            hits += 1
            assert verify_hamilton_cycle(g, cyc)
    assert hits >= 5


def test_dirac_graphs_small():
    r = rng(3)
    checked = 0
    while checked < 100:
        n = int(r.integers(3, 11))
        g = random_graph(n, float(r.uniform(0.5, 0.95)), r)
        if min_degree(g) * 2 < n:
            continue
        checked += 1
        assert exact_hamilton(g) is not None
        assert posa_find_hamilton(g, checked, restart_budget=50) is not None
