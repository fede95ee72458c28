import pytest
from hypothesis import given, settings, strategies as st

from turan_forge.errors import InputError
from turan_forge.graphs import build_graph, read_edge_list, two_coloring, write_edge_list


def test_build_c4():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.n == 4 and g.edge_count == 4
    assert g.neighbors(0) == (1, 3)


def test_build_empty_and_dedup():
    assert build_graph(3, []).edge_count == 0
    assert build_graph(4, [(0, 1), (1, 0)]).edge_count == 1
    assert build_graph(4, [(0, 1), (0, 1), (1, 0)]).edge_count == 1


def test_build_rejects_bad_input():
    with pytest.raises(InputError):
        build_graph(3, [(0, 3)])
    with pytest.raises(InputError):
        build_graph(3, [(1, 1)])


def test_common_neighbors_examples():
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4.common_neighbors(0, 2) == [1, 3]
    assert c4.codegree(0, 2) == 2
    k33 = build_graph(6, [(a, 3 + b) for a in range(3) for b in range(3)])
    assert k33.codegree(0, 1) == 3
    path = build_graph(3, [(0, 1), (1, 2)])
    assert path.common_neighbors(0, 2) == [1]
    with pytest.raises(InputError):
        path.common_neighbors(1, 1)


def test_remove_examples():
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    g = k3.remove(vertices=[0])
    assert g.edge_count == 1 and g.num_vertices == 2 and not g.is_alive(0)
    assert g.n == 3  # ids preserved
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    p4 = c4.remove(edges=[(0, 1)])
    assert p4.edge_count == 3 and p4.num_vertices == 4
    same = c4.remove()
    assert same.edge_count == 4 and list(same.edges()) == list(c4.edges())


edge_lists = st.integers(4, 12).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                 .filter(lambda e: e[0] != e[1]), max_size=40)))


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_degree_sum_is_twice_edges(data):
    n, edges = data
    g = build_graph(n, edges)
    assert sum(g.degrees()) == 2 * g.edge_count


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_codegree_counts_two_paths(data):
    n, edges = data
    g = build_graph(n, edges)
    for u in range(n):
        for v in range(u + 1, n):
            brute = sum(1 for w in range(n)
                        if w not in (u, v) and g.has_edge(u, w)
                        and g.has_edge(w, v))
            assert g.codegree(u, v) == brute


@settings(max_examples=40, deadline=None)
@given(edge_lists)
def test_remove_recount(data):
    n, edges = data
    g = build_graph(n, edges)
    victim = 0
    lost = g.degree(victim)
    h = g.remove(vertices=[victim])
    assert h.edge_count == g.edge_count - lost
    for v in h.vertices():
        expect = g.degree(v) - (1 if g.has_edge(victim, v) else 0)
        assert h.degree(v) == expect


def test_codegree_matrix_matches_merge():
    g = build_graph(7, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5),
                        (5, 6), (6, 0), (1, 4)])
    m = g.codegree_matrix()
    for u in range(7):
        for v in range(u + 1, 7):
            assert int(m[u, v]) == len(g.common_neighbors(u, v))


def test_edge_list_roundtrip(tmp_path):
    g = build_graph(6, [(0, 1), (2, 5), (3, 4)])
    path = tmp_path / "g.el"
    write_edge_list(g, path)
    h = read_edge_list(path)
    assert h.n == g.n and list(h.edges()) == list(g.edges())


def test_edge_list_parsing():
    g = read_edge_list(["# comment", "n 5", "0 1", "", "3 4"])
    assert g.n == 5 and g.edge_count == 2
    g = read_edge_list(["0 1", "1 2"])
    assert g.n == 3
    with pytest.raises(InputError):
        read_edge_list(["0 1 2"])


def test_two_coloring():
    k33 = build_graph(6, [(a, 3 + b) for a in range(3) for b in range(3)])
    side = two_coloring(k33)
    assert side is not None
    assert all(side[u] != side[v] for (u, v) in k33.edges())
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert two_coloring(k3) is None
