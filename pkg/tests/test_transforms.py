import itertools

import pytest

from turan_forge.errors import InputError
from turan_forge.generators import random_graph
from turan_forge.graphs import build_graph, two_coloring
from turan_forge.transforms import (almost_regular_subgraph, bipartite_half,
                                    clean_subgraph, is_clean, peel_min_degree)


def complete(n):
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def test_peel_examples():
    g = build_graph(4, [(0, 1), (1, 2), (0, 2)])
    out, rep = peel_min_degree(g)
    assert out.num_vertices == 3 and out.edge_count == 3
    star = build_graph(6, [(0, i) for i in range(1, 6)])
    out, _ = peel_min_degree(star)
    assert out.edge_count == 5 and out.num_vertices == 6
    two_triangles = build_graph(6, [(0, 1), (1, 2), (0, 2),
                                    (3, 4), (4, 5), (3, 5)])
    out, _ = peel_min_degree(two_triangles)
    assert out.edge_count == 6
    with pytest.raises(InputError):
        peel_min_degree(build_graph(3, []))


@pytest.mark.parametrize("seed", range(10))
def test_peel_postconditions(seed):
    g = random_graph(40, 0.12, seed)
    if g.edge_count == 0:
        return
    out, rep = peel_min_degree(g)
    d = g.average_degree
    assert out.edge_count >= g.edge_count / 2
    assert out.min_degree_alive() >= d / 4


def test_bipartite_half_examples():
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    h, side = bipartite_half(k3)
    assert h.edge_count == 2
    k33 = build_graph(6, [(a, 3 + b) for a in range(3) for b in range(3)])
    h, _ = bipartite_half(k33)
    assert h.edge_count == 9
    c5 = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    # exhaustive max cut of C5 is 4
    best = max(sum(1 for (u, v) in c5.edges()
                   if (bits >> u & 1) != (bits >> v & 1))
               for bits in range(32))
    assert best == 4
    h, side = bipartite_half(c5)
    assert h.edge_count == 4
    assert all(side[u] != side[v] for (u, v) in h.edges())


@pytest.mark.parametrize("seed", range(8))
def test_bipartite_half_postconditions(seed):
    g = random_graph(30, 0.3, seed)
    h, side = bipartite_half(g)
    assert 2 * h.edge_count >= g.edge_count
    assert all(side[u] != side[v] for (u, v) in h.edges())
    assert two_coloring(h) is not None


def test_almost_regular_examples():
    h, rep = almost_regular_subgraph(complete(10), 0.5, 1.0, 4.0)
    assert h is not None and h.edge_count == 45
    assert rep.extras["k_achieved"] == 1.0
    k6_iso = build_graph(56, list(itertools.combinations(range(6), 2)))
    h, _ = almost_regular_subgraph(k6_iso, 0.2, 0.1, 4.0)
    assert h is not None and h.num_vertices == 6 and h.edge_count == 15
    star = build_graph(1001, [(0, i) for i in range(1, 1001)])
    with pytest.raises(InputError):
        almost_regular_subgraph(star, 0.5, 1.0, 4.0)


@pytest.mark.parametrize("seed", range(6))
def test_almost_regular_postconditions(seed):
    g = random_graph(60, 0.3, seed)
    h, rep = almost_regular_subgraph(g, 0.5, 0.2, 4.0)
    if h is None:
        assert rep.extras["bands"]
        return
    assert h.max_degree() <= 4.0 * h.min_degree_alive()
    m = h.num_vertices
    assert h.edge_count >= (2 * 0.2 / 5) * m ** 1.5


def test_clean_examples():
    m = 16
    kmm = build_graph(2 * m, [(a, m + b) for a in range(m) for b in range(m)])
    h, _ = clean_subgraph(kmm)
    assert h.edge_count == m * m
    assert is_clean(h)
    pendant = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    h, rep = clean_subgraph(pendant)
    assert sorted(h.edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    empty = build_graph(3, [])
    h, _ = clean_subgraph(empty)
    assert h.edge_count == 0
    with pytest.raises(InputError):
        clean_subgraph(kmm, mode="bogus")


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("mode", ["fixed", "self"])
def test_clean_postcondition_own_degree(seed, mode):
    g = random_graph(30, 0.4, seed)
    h, _ = clean_subgraph(g, mode=mode)
    if h.edge_count:
        assert is_clean(h)  # thresholds from the output's own average degree
