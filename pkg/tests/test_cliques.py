import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clique_lab.cliques import clique_graph, is_maximal_clique, iterate, maximal_cliques
from clique_lab.graph import FiniteGraph, SizeGuardError, find_isomorphism
from clique_lab.lattice import PRIMAL, LayeredSpec, WindowSpec, build_window, within_radius
from clique_lab.quotient import QuotientSpec, build_quotient


def naive_maximal_cliques(g):
    """Every vertex subset, kept if complete and not extendable."""
    found = []
    n = g.vertex_count
    for mask in range(1, 1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if is_maximal_clique(g, members):
            found.append(tuple(members))
    return sorted(found)


@st.composite
def small_graphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    p = draw(st.sampled_from([0.2, 0.4, 0.6, 0.8]))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    return FiniteGraph.from_edges(n, [e for e, x in zip(pairs, keep) if x < p])


def path(n):
    return FiniteGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_examples():
    triangle = FiniteGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert maximal_cliques(triangle).cliques == ((0, 1, 2),)
    assert maximal_cliques(path(4)).cliques == ((0, 1), (1, 2), (2, 3))
    assert maximal_cliques(FiniteGraph.from_edges(2, [])).cliques == ((0,), (1,))
    assert len(maximal_cliques(FiniteGraph.from_edges(0, []))) == 0


def test_interior_cliques_of_full_lattice_have_eight_vertices():
    g = build_window(LayeredSpec(3, PRIMAL, None), WindowSpec(4, 2))
    cl = maximal_cliques(g)
    interior = [c for c in cl if all(within_radius(g.labels[v], 4) for v in c)]
    assert interior and all(len(c) == 8 for c in interior)


def test_clique_graph_examples():
    triangle = FiniteGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    kg, _ = clique_graph(triangle)
    assert kg.vertex_count == 1 and kg.edge_count == 0
    kg, cl = clique_graph(path(4))
    assert kg.edges() == [(0, 1), (1, 2)]
    assert len(cl) == kg.vertex_count


def test_clique_graph_of_torus():
    T = build_quotient(LayeredSpec(3, PRIMAL, 0), QuotientSpec.parse("7,-7,0;0,7,-7"))
    kg, cl = clique_graph(T)
    # two triangles per lattice cell
    assert kg.vertex_count == 2 * 49 == len(cl)
    assert all(len(c) == 3 for c in cl)


def test_iterate_steps_zero():
    g = path(5)
    graphs, report = iterate(g, 0)
    assert graphs == [g]
    assert len(report.records) == 1 and report.records[0].vertex_count == 5


def test_iterate_torus_growth():
    T = build_quotient(LayeredSpec(3, PRIMAL, 0), QuotientSpec.parse("7,-7,0;0,7,-7"))
    graphs, report = iterate(T, 6)
    assert [r.vertex_count for r in report.records] == [49 * (m + 1) for m in range(7)]
    assert all(r.max_clique_size <= 8 and r.max_degree <= 26 for r in report.records)
    assert [g.vertex_count for g in graphs] == [r.vertex_count for r in report.records]


def test_iterate_cap():
    g = build_window(LayeredSpec(3, PRIMAL, 0), WindowSpec(3, 0))
    with pytest.raises(SizeGuardError):
        iterate(g, 5, cap=50)
    with pytest.raises(SizeGuardError):
        iterate(g, 1, cap=10)


def test_report_rendering_is_reproducible():
    g = path(6)
    a = iterate(g, 3)[1]
    b = iterate(g, 3)[1]
    assert a.to_jsonl() == b.to_jsonl()
    assert a.to_table() == b.to_table()
    assert "elapsed" not in a.to_jsonl() and "elapsed" in a.to_jsonl(timings=True)
    assert a.to_table().splitlines()[0].split() == ["step", "vertices", "edges", "max_deg", "max_clique"]


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_matches_naive_enumerator(g):
    assert list(maximal_cliques(g).cliques) == naive_maximal_cliques(g)


@given(small_graphs(max_n=25))
@settings(max_examples=60, deadline=None)
def test_matches_networkx(g):
    ng = nx.Graph(g.edges())
    ng.add_nodes_from(range(g.vertex_count))
    assert list(maximal_cliques(g).cliques) == sorted(tuple(sorted(c)) for c in nx.find_cliques(ng))


@given(small_graphs(max_n=20))
@settings(max_examples=40, deadline=None)
def test_clique_graph_matches_all_pairs_oracle(g):
    kg, cl = clique_graph(g)
    sets = [set(c) for c in cl]
    expected = [(i, j) for i, j in itertools.combinations(range(len(sets)), 2) if sets[i] & sets[j]]
    assert kg.edges() == expected


def test_clique_graph_is_an_isomorphism_invariant():
    g = build_window(LayeredSpec(2, PRIMAL, 2), WindowSpec(3, 0))
    perm = list(reversed(range(g.vertex_count)))
    h = FiniteGraph.from_edges(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges()])
    assert find_isomorphism(clique_graph(g)[0], clique_graph(h)[0]) is not None
