import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from reslab.generators import gnp, random_regular, rng_for
from reslab.graph import Graph, GraphError, edges_between, max_degree
from reslab.spectral import (adjacency_spectrum, eps_regularity_probe, expansion_probe,
                             expansion_ratio, lambda_estimate, mixing_discrepancy,
                             ordered_pair_count)


def test_known_spectra():
    k3 = adjacency_spectrum(Graph.complete(3))
    assert np.allclose(k3.eigenvalues, [2, -1, -1]) and math.isclose(k3.lam, 1)
    c4 = adjacency_spectrum(Graph.cycle(4))
    assert np.allclose(c4.eigenvalues, [2, 0, 0, -2], atol=1e-12) and math.isclose(c4.lam, 2)
    assert np.allclose(adjacency_spectrum(Graph.empty(5)).eigenvalues, 0)
    assert "lambda" in k3.to_json()


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1))
def test_trace_and_frobenius(g):
    vals = np.array(adjacency_spectrum(g).eigenvalues)
    assert abs(vals.sum()) <= 1e-6 * max(1, g.m)
    assert math.isclose((vals ** 2).sum(), 2 * g.m, rel_tol=1e-6, abs_tol=1e-9)
    assert vals[0] <= max_degree(g) + 1e-9


def test_regular_top_eigenvalue():
    g = random_regular(100, 6, 2)
    assert abs(adjacency_spectrum(g).eigenvalues[0] - 6) <= 1e-8 * 6


def test_lambda_estimate_small():
    assert abs(lambda_estimate(Graph.complete(4), 200, 1) - 1) <= 1e-6
    # C6 is bipartite: -2 is in the spectrum, so max_{i>=2} |lambda_i| = 2.
    assert abs(lambda_estimate(Graph.cycle(6), 2000, 1) - 2) <= 1e-4
    assert abs(adjacency_spectrum(Graph.cycle(6)).eigenvalues[1] - 1) <= 1e-9
    with pytest.raises(GraphError):
        lambda_estimate(Graph.path(4), 10, 0)


def test_lambda_estimate_agrees_with_spectrum():
    for s in range(20):
        g = random_regular(200, 8, s)
        exact = adjacency_spectrum(g).lam
        est = lambda_estimate(g, 3000, s)
        assert est <= exact + 1e-4
        assert abs(est - exact) <= 1e-4


def test_ordered_pairs():
    k3 = Graph.complete(3)
    assert ordered_pair_count(k3, [0, 1, 2], [0, 1, 2]) == 6
    assert ordered_pair_count(Graph.from_edges(2, [(0, 1)]), [0, 1], [1]) == 1


@settings(max_examples=40)
@given(graphs(min_n=2), st.data())
def test_ordered_pairs_match_edges_between_on_disjoint_sets(g, data):
    labels = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    a = [v for v in range(g.n) if labels[v] == 0]
    b = [v for v in range(g.n) if labels[v] == 1]
    assert ordered_pair_count(g, a, b) == edges_between(g, a, b)


def test_mixing_trivial_cases():
    g = random_regular(50, 4, 0)
    prof = adjacency_spectrum(g)
    assert mixing_discrepancy(g, prof, [], [1, 2]) == (0.0, 0.0)
    lhs, _ = mixing_discrepancy(g, prof, range(50), range(50))
    assert lhs == 0
    with pytest.raises(GraphError):
        mixing_discrepancy(random_regular(50, 6, 1), prof, [0], [1])


@pytest.mark.parametrize("seed", range(3))
def test_mixing_holds_on_random_sets(seed):
    g = random_regular(120, 6, seed)
    prof = adjacency_spectrum(g)
    rng = rng_for(seed, 9)
    for _ in range(300):
        b = rng.choice(120, size=int(rng.integers(1, 121)), replace=False)
        c = rng.choice(120, size=int(rng.integers(1, 121)), replace=False)
        lhs, rhs = mixing_discrepancy(g, prof, b, c)
        assert lhs <= rhs + 1e-9


def test_regularity_probe_examples():
    k = eps_regularity_probe(Graph.complete(40), 1.0, 0.2, 50, 1)
    assert k.worst_deviation <= 1 / (0.2 * 40) and k.certificate == "sampled"
    e = eps_regularity_probe(Graph.empty(40), 0.0, 0.2, 50, 1)
    assert e.worst_deviation == 0 and e.min_degree_ok
    assert not eps_regularity_probe(Graph.empty(40), 0.5, 0.2, 5, 1).min_degree_ok


def test_regularity_probe_dense_random():
    good = sum(eps_regularity_probe(gnp(2000, 0.5, s), 0.5, 0.1, 500, s).worst_deviation < 0.05
               for s in range(3))
    assert good == 3


def test_probes_monotone_in_samples():
    g = gnp(200, 0.1, 4)
    rep = eps_regularity_probe(g, 0.1, 0.2, 100, 7)
    assert all(a <= b for a, b in zip(rep.trace, rep.trace[1:]))
    r1, _ = expansion_probe(g, 10, 20, 0.0, 5)
    r2, _ = expansion_probe(g, 10, 80, 0.0, 5)
    assert r2 <= r1


def test_expansion_examples():
    n = 8
    assert expansion_ratio(Graph.complete(n), [0, 1, 2]) >= (n - 1) / 3
    star = Graph.from_edges(n, [(0, v) for v in range(1, n)])
    assert expansion_ratio(star, [0]) == n - 1
    two_k4 = Graph.from_edges(8, [(a + o, b + o) for o in (0, 4)
                                  for a in range(4) for b in range(a + 1, 4)])
    ratio, witness = expansion_probe(two_k4, 4, 200, 1.01, 3)
    assert ratio <= 1 and witness is not None
    assert expansion_ratio(two_k4, witness) < 1.01
