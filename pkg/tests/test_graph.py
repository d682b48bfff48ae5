import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clique_lab.graph import (
    INF,
    FiniteGraph,
    GraphError,
    SizeGuardError,
    check_isomorphism_map,
    connected_components,
    degree,
    distance,
    find_isomorphism,
    induced_subgraph,
)
from clique_lab.lattice import LayeredSpec, WindowSpec, build_window


def path(n):
    return FiniteGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return FiniteGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = [e for e in pairs if draw(st.booleans())]
    return FiniteGraph.from_edges(n, edges)


def test_constructor_rejects_bad_adjacency():
    with pytest.raises(GraphError):
        FiniteGraph(2, (frozenset({1}), frozenset()))
    with pytest.raises(GraphError):
        FiniteGraph(1, (frozenset({0}),))
    with pytest.raises(GraphError):
        FiniteGraph.from_edges(2, [], labels=[(0,), (0,)])


def test_degree():
    hex_window = build_window(LayeredSpec(3, "primal", 0), WindowSpec(1, 0))
    centre = hex_window.label_index[(0, 0, 0)]
    assert degree(hex_window, centre) == 6
    assert degree(FiniteGraph.from_edges(3, []), 1) == 0
    with pytest.raises(IndexError):
        degree(path(3), 3)


def test_degree_interior_of_full_lattice_window():
    expected = sum(1 for o in itertools.product((-1, 0, 1), repeat=3) if any(o))
    assert expected == 26
    g = build_window(LayeredSpec(3, "primal", None), WindowSpec(4, 2))
    assert degree(g, g.label_index[(0, 0, 0)]) == expected
    assert degree(g, g.label_index[(4, -2, 6)]) == expected


def test_connected_components():
    triangle = FiniteGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert connected_components(triangle) == [[0, 1, 2]]
    two_edges = FiniteGraph.from_edges(4, [(0, 2), (1, 3)])
    assert connected_components(two_edges) == [[0, 2], [1, 3]]


def test_distance():
    g = path(5)
    assert distance(g, [2], [2]) == 0
    assert distance(g, [0], [4]) == 4
    assert distance(FiniteGraph.from_edges(2, []), [0], [1]) == INF
    with pytest.raises(GraphError):
        distance(g, [], [1])


def test_induced_subgraph():
    g = cycle(5)
    assert induced_subgraph(g, range(5)) == g
    single = induced_subgraph(g, [3])
    assert single.vertex_count == 1 and single.edge_count == 0
    assert induced_subgraph(g, [0, 1, 3]).edges() == [(0, 1)]


def test_hex_is_the_zero_layer_of_the_full_window():
    full = build_window(LayeredSpec(3, "primal", None), WindowSpec(3, 0))
    zero = [i for i, p in enumerate(full.labels) if sum(p) == 0]
    sub = induced_subgraph(full, zero)
    hex_window = build_window(LayeredSpec(3, "primal", 0), WindowSpec(3, 0))
    assert sub.labels == hex_window.labels
    assert sub.edges() == hex_window.edges()


def test_check_isomorphism_map():
    g = cycle(6)
    assert check_isomorphism_map(g, g, list(range(6)))
    edge = FiniteGraph.from_edges(2, [(0, 1)])
    assert check_isomorphism_map(edge, edge, {0: 1, 1: 0})
    assert not check_isomorphism_map(cycle(4), path(4), [0, 1, 2, 3])
    with pytest.raises(GraphError):
        check_isomorphism_map(g, g, [0] * 6)


def test_find_isomorphism_examples():
    c5 = cycle(5)
    perm = [3, 0, 4, 1, 2]
    relabelled = FiniteGraph.from_edges(5, [(perm[u], perm[v]) for u, v in c5.edges()])
    f = find_isomorphism(c5, relabelled)
    assert f is not None and check_isomorphism_map(c5, relabelled, f)
    assert find_isomorphism(cycle(4), path(4)) is None
    # same degree sequence, not isomorphic: C6 vs two triangles
    two_triangles = FiniteGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert find_isomorphism(cycle(6), two_triangles) is None


def test_find_isomorphism_cap():
    with pytest.raises(SizeGuardError):
        find_isomorphism(path(10), path(10), cap=5)


def test_find_isomorphism_regular_non_isomorphic():
    # both 3-regular on 8 vertices: the cube graph and the Wagner graph
    cube = nx.convert_node_labels_to_integers(nx.hypercube_graph(3))
    twisted = nx.circulant_graph(8, [1, 4])
    assert not nx.is_isomorphic(cube, twisted)
    g = FiniteGraph.from_edges(8, cube.edges())
    h = FiniteGraph.from_edges(8, twisted.edges())
    assert find_isomorphism(g, h) is None


@given(graphs(), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_isomorphism_round_trip(g, rnd):
    perm = list(range(g.vertex_count))
    rnd.shuffle(perm)
    h = FiniteGraph.from_edges(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges()])
    f = find_isomorphism(g, h)
    assert f is not None
    assert check_isomorphism_map(g, h, f)


@given(graphs(max_n=8), graphs(max_n=8))
@settings(max_examples=150, deadline=None)
def test_isomorphism_agrees_with_networkx(g, h):
    ng = nx.Graph(g.edges())
    ng.add_nodes_from(range(g.vertex_count))
    nh = nx.Graph(h.edges())
    nh.add_nodes_from(range(h.vertex_count))
    f = find_isomorphism(g, h)
    assert (f is not None) == nx.is_isomorphic(ng, nh)
    if f is not None:
        assert check_isomorphism_map(g, h, f)


@given(graphs())
def test_components_partition(g):
    blocks = connected_components(g)
    flat = sorted(v for b in blocks for v in b)
    assert flat == list(range(g.vertex_count))
    assert [b[0] for b in blocks] == sorted(b[0] for b in blocks)
    for b in blocks:
        inside = set(b)
        for v in b:
            assert g.adjacency[v] <= inside


@given(graphs(max_n=9), st.data())
def test_distance_symmetric_and_triangle(g, data):
    if g.vertex_count == 0:
        return
    v = st.integers(0, g.vertex_count - 1)
    a, b, c = data.draw(v), data.draw(v), data.draw(v)
    assert distance(g, [a], [b]) == distance(g, [b], [a])
    assert distance(g, [a], [c]) <= distance(g, [a], [b]) + distance(g, [b], [c])


def test_find_isomorphism_is_deterministic():
    rnd = random.Random(7)
    edges = [e for e in itertools.combinations(range(20), 2) if rnd.random() < 0.2]
    g = FiniteGraph.from_edges(20, edges)
    assert find_isomorphism(g, g) == find_isomorphism(g, g)
