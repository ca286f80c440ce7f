import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_matching, graphs, random_graph, rng
from reslab.adversaries import random_degree_bounded
from reslab.generators import gnp
from reslab.graph import Graph, GraphError, neighborhood_of_set
from reslab.matching import (bipartite_matching_via_random_split, crossing_graph,
                             has_near_perfect_matching, has_perfect_matching, hall_witness,
                             is_matching, max_matching)


def test_examples():
    assert max_matching(Graph.complete(4)).size == 2
    assert max_matching(Graph.from_edges(6, [(0, v) for v in range(1, 6)])).size == 1
    assert has_perfect_matching(Graph.complete(4))
    assert not has_perfect_matching(Graph.complete(5))
    assert has_near_perfect_matching(Graph.complete(5))
    assert not has_perfect_matching(Graph.from_edges(6, [(0, 1), (2, 3)]))


def test_all_graphs_up_to_four_vertices():
    for n in range(5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            assert max_matching(g).size == brute_matching(g)


def test_blossom_needed():
    # Odd cycle with a pendant: a naive bipartite search misses the augmentation.
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)])
    assert max_matching(g).size == 3


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_matches_exhaustive_and_is_valid(g):
    mm = max_matching(g)
    assert is_matching(g, mm.pairs)
    assert mm.size == brute_matching(g)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=12), st.data())
def test_adding_an_edge_never_shrinks(g, data):
    non_edges = [e for e in itertools.combinations(range(g.n), 2) if not g.has_edge(*e)]
    if not non_edges:
        return
    extra = data.draw(st.sampled_from(non_edges))
    g2 = Graph.from_edges(g.n, g.edges() + [extra])
    assert max_matching(g2).size >= max_matching(g).size


def test_hall_examples():
    k33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert hall_witness(k33, [0, 1, 2], [3, 4, 5]) is None
    g = Graph.from_edges(4, [(0, 2), (1, 2)])
    assert hall_witness(g, [0, 1], [2, 3]) == (0, 1)
    with pytest.raises(GraphError):
        crossing_graph(g, [0, 1], [1, 2, 3])


def _perm_matching_exists(g, left, right):
    return any(all(g.has_edge(a, b) for a, b in zip(left, perm))
               for perm in itertools.permutations(right))


def test_hall_duality_against_permutation_oracle():
    r = rng(11)
    for trial in range(150):
        g = random_graph(12, float(r.uniform(0.1, 0.5)), r)
        perm = r.permutation(12).tolist()
        left, right = sorted(perm[:6]), sorted(perm[6:])
        w = hall_witness(g, left, right)
        assert (w is None) == _perm_matching_exists(g, left, right)
        if w is not None:
            cross = crossing_graph(g, left, right)
            assert len(neighborhood_of_set(cross, w)) < len(w)


def test_random_split_examples():
    out = bipartite_matching_via_random_split(Graph.complete(4), 3)
    assert out.matching is not None and out.matching.size == 2 and out.witness is None
    out = bipartite_matching_via_random_split(Graph.empty(4), 3)
    assert out.matching is None and out.witness is not None
    with pytest.raises(GraphError):
        bipartite_matching_via_random_split(Graph.complete(5), 0)


def test_random_split_after_mild_attack():
    found = 0
    for s in range(50):
        g = gnp(200, 0.2, s)
        h = random_degree_bounded(g, round(0.3 * 200 * 0.2), "delete", s + 1000)
        found += bipartite_matching_via_random_split(h.apply(g), s).matching is not None
    assert found >= 45
