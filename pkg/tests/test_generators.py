import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reslab.generators import derive_seed, gnp, random_equal_bipartition, random_regular
from reslab.graph import Graph, GraphError, serialize_edge_list


def test_gnp_extremes():
    assert gnp(30, 0.0, 1) == Graph.empty(30)
    assert gnp(30, 1.0, 1) == Graph.complete(30)
    with pytest.raises(GraphError):
        gnp(10, 1.5, 0)
    with pytest.raises(GraphError):
        gnp(10, -0.1, 0)


def test_gnp_edge_count_concentration():
    pairs = 1000 * 999 // 2
    sigma = math.sqrt(pairs * 0.25)
    inside = sum(abs(gnp(1000, 0.5, s).m - pairs / 2) <= 4 * sigma for s in range(100))
    assert inside >= 99


@pytest.mark.parametrize("p", [0.01, 0.05, 0.3])
def test_gnp_mean_within_five_sigma(p):
    n = 400
    pairs = n * (n - 1) // 2
    counts = np.array([gnp(n, p, s).m for s in range(100)])
    sigma_mean = math.sqrt(pairs * p * (1 - p) / 100)
    assert abs(counts.mean() - pairs * p) <= 5 * sigma_mean


def test_gnp_sparse_pairs_uniform():
    # Geometric skipping should not favour early or late pairs.
    n = 200
    hits = np.zeros(n)
    for s in range(50):
        u, v = gnp(n, 0.02, s).edge_arrays()
        np.add.at(hits, u, 1)
        np.add.at(hits, v, 1)
    first, second = hits[: n // 2].sum(), hits[n // 2:].sum()
    assert abs(first - second) / (first + second) < 0.05


def test_gnp_deterministic():
    a = serialize_edge_list(gnp(300, 0.07, 42))
    assert a == serialize_edge_list(gnp(300, 0.07, 42))
    assert a != serialize_edge_list(gnp(300, 0.07, 43))


def test_random_regular_examples():
    assert random_regular(4, 3, 5) == Graph.complete(4)
    assert random_regular(9, 0, 5) == Graph.empty(9)
    with pytest.raises(GraphError):
        random_regular(5, 3, 0)
    with pytest.raises(GraphError):
        random_regular(4, 4, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 80), st.integers(1, 12), st.integers(0, 2**32))
def test_random_regular_is_simple_and_regular(n, d, seed):
    if d >= n or (n * d) % 2:
        return
    g = random_regular(n, d, seed)
    assert g.m == n * d // 2
    assert set(g.degrees.tolist()) == {d}


def test_random_regular_deterministic():
    assert random_regular(200, 10, 3) == random_regular(200, 10, 3)


def test_bipartition_examples():
    assert random_equal_bipartition(2, 0) in [((0,), (1,)), ((1,), (0,))]
    a, b = random_equal_bipartition(20, 9)
    assert len(a) == len(b) == 10 and sorted(a + b) == list(range(20))
    with pytest.raises(GraphError):
        random_equal_bipartition(5, 0)


def test_bipartition_symmetry():
    freq = np.zeros(10)
    for s in range(10_000):
        freq[list(random_equal_bipartition(10, s)[0])] += 1
    assert np.all(np.abs(freq / 10_000 - 0.5) <= 0.02)


def test_derive_seed_streams_differ():
    seeds = {derive_seed(7, i) for i in range(100)} | {derive_seed(7, 0, i) for i in range(100)}
    assert len(seeds) == 200
