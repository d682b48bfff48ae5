import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clique_lab.cliques import clique_graph, maximal_cliques
from clique_lab.graph import check_isomorphism_map
from clique_lab.lattice import DUAL, PRIMAL, LayeredSpec, linf_adjacent
from clique_lab.quotient import (
    OrbitTable,
    QuotientError,
    QuotientSpec,
    build_quotient,
    descend_iota,
    layered_spec_for_step,
    local_structure_check,
    validate,
    verify_quotient_theorem,
)

SEVEN = QuotientSpec.parse("7,-7,0;0,7,-7")
HEX = LayeredSpec(3, PRIMAL, 0)


def test_parse_and_format():
    assert SEVEN.g1 == (7, -7, 0) and SEVEN.g2 == (0, 7, -7)
    assert QuotientSpec.parse(str(SEVEN)) == SEVEN
    for bad in ["7,-7,0", "7,-7;0,7", "a,b,c;1,2,3"]:
        with pytest.raises(QuotientError):
            QuotientSpec.parse(bad)


def test_validate():
    assert validate(SEVEN) == 49
    # index is the 2x2 determinant of the first two columns
    assert validate(QuotientSpec.parse("6,-3,-3;3,3,-6")) == abs(6 * 3 - (-3) * 3)
    with pytest.raises(QuotientError):
        validate(QuotientSpec.parse("3,-3,0;0,3,-3"))
    with pytest.raises(QuotientError):
        validate(QuotientSpec.parse("7,-7,0;14,-14,0"))
    with pytest.raises(QuotientError):
        validate(QuotientSpec.parse("7,-7,1;0,7,-7"))


@pytest.mark.parametrize(
    "spec, count",
    [(HEX, 49), (LayeredSpec(3, DUAL, 1), 98), (LayeredSpec(3, PRIMAL, 2), 147)],
)
def test_build_counts(spec, count):
    assert build_quotient(spec, SEVEN).vertex_count == count


def test_torus_is_six_regular():
    t = build_quotient(HEX, SEVEN)
    assert {len(a) for a in t.adjacency} == {6}
    assert t.edge_count == 3 * 49
    assert t.meta["index"] == 49


@given(st.lists(st.integers(-40, 40), min_size=3, max_size=3), st.integers(-5, 5), st.integers(-5, 5), st.booleans())
def test_rep_is_canonical(coords, i, j, dual):
    table = OrbitTable(SEVEN)
    p = tuple(2 * c + dual for c in coords)
    r = table.rep(p)
    assert table.rep(r) == r
    assert sum(r) == sum(p)
    shift = tuple(2 * (i * a + j * b) for a, b in zip(SEVEN.g1, SEVEN.g2))
    assert table.rep(tuple(x + y for x, y in zip(p, shift))) == r
    # difference from the representative lies in the translation lattice
    diff = [(x - y) // 2 for x, y in zip(p, r)]
    assert any(
        all(d == u * a + v * b for d, a, b in zip(diff, SEVEN.g1, SEVEN.g2))
        for u, v in itertools.product(range(-30, 31), repeat=2)
    )


def test_quotient_edges_lift():
    t = build_quotient(LayeredSpec(3, DUAL, 1), SEVEN)
    table = OrbitTable(SEVEN)
    offsets = [o for o in itertools.product((-2, 0, 2), repeat=3) if any(o)]
    for u, v in t.edges():
        p, q = t.labels[u], t.labels[v]
        assert any(table.rep(tuple(a + b for a, b in zip(p, o))) == q for o in offsets)


@pytest.mark.parametrize("spec", [HEX, LayeredSpec(3, DUAL, 1), LayeredSpec(3, PRIMAL, 2)])
def test_descend_iota_is_an_isomorphism(spec):
    g = build_quotient(spec, SEVEN)
    kg, cl = clique_graph(g)
    descent = descend_iota(g, spec, SEVEN, cl)
    assert sorted(descent.mapping.values()) == list(range(descent.target.vertex_count))
    assert check_isomorphism_map(kg, descent.target, descent.mapping)


def test_descend_iota_cliques_meet_like_centroids():
    g = build_quotient(HEX, SEVEN)
    descent = descend_iota(g, HEX, SEVEN)
    labels = descent.target.labels
    a = 0
    for b in range(1, len(descent.cliques)):
        meet = bool(set(descent.cliques[a]) & set(descent.cliques[b]))
        p, q = labels[descent.mapping[a]], labels[descent.mapping[b]]
        near = any(
            linf_adjacent(p, tuple(x + 2 * (i * s + j * t) for x, s, t in zip(q, SEVEN.g1, SEVEN.g2)))
            for i, j in itertools.product(range(-2, 3), repeat=2)
        )
        assert meet == near


def test_layered_spec_for_step():
    assert layered_spec_for_step(0) == HEX
    assert layered_spec_for_step(3) == LayeredSpec(3, DUAL, 3)


def test_quotient_theorem_short_run():
    report = verify_quotient_theorem(SEVEN, 3)
    assert report.passed, report.counterexample
    assert [s["vertices"] for s in report.details["steps"]] == [49, 98, 147, 196]
    assert report.details["steps"][-1]["search_map"]


@pytest.mark.parametrize("spec", [HEX, LayeredSpec(3, DUAL, 1), LayeredSpec(3, PRIMAL, 2), LayeredSpec(3, DUAL, 3)])
def test_local_structure(spec):
    assert local_structure_check(spec, QuotientSpec.parse("11,-11,0;0,11,-11"), radius=2)


def test_maximal_cliques_of_the_torus_are_triangles():
    cl = maximal_cliques(build_quotient(HEX, SEVEN))
    assert len(cl) == 98 and cl.max_size == 3
