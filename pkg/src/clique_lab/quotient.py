"""Torus quotients ``G_3(n)/Gamma`` by rank-2 translation groups.

``Gamma`` is generated by two integer vectors with coordinate sum zero, so
it preserves every layer.  A layer is identified with the plane via its
first two coordinates; orbit representatives are read off a Hermite normal
form basis of the projected translation lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .cliques import CliqueList, iterate, maximal_cliques
from .graph import FiniteGraph, check_isomorphism_map, find_isomorphism, induced_subgraph
from .lattice import DUAL, PRIMAL, LayeredSpec, Point, build_window, WindowSpec, cube_centroid, in_layered
from .theorem import ClaimReport, ExtensionError, extension_of, predicted_successor

MIN_DISPLACEMENT = 5
SEARCH_RANGE = 6


class QuotientError(ValueError):
    pass


class QuotientTooSmallError(QuotientError):
    """A clique of the quotient does not lift to a clique of the layered graph."""


@dataclass(frozen=True)
class QuotientSpec:
    """Translation generators in whole (not doubled) coordinates."""

    g1: tuple[int, int, int]
    g2: tuple[int, int, int]

    @classmethod
    def parse(cls, text: str) -> QuotientSpec:
        """Parse ``"7,-7,0;0,7,-7"``."""
        try:
            parts = [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";")]
        except ValueError:
            raise QuotientError(f"cannot parse generators {text!r}") from None
        if len(parts) != 2 or any(len(p) != 3 for p in parts):
            raise QuotientError(f"expected two 3-vectors, got {text!r}")
        return cls(parts[0], parts[1])

    def __str__(self):
        return ";".join(",".join(str(x) for x in g) for g in (self.g1, self.g2))

    def to_json(self) -> dict:
        return {"g1": list(self.g1), "g2": list(self.g2)}


def _hnf(v1: tuple[int, int], v2: tuple[int, int]) -> tuple[int, int, int]:
    """Basis ``(a, b), (0, c)`` of the lattice spanned by ``v1, v2``."""
    (x1, y1), (x2, y2) = v1, v2
    if x1 * y2 - x2 * y1 == 0:
        raise QuotientError("dependent generators")
    # extended gcd on the first column
    old_r, r = x1, x2
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g = old_r
    top = (g, old_s * y1 + old_t * y2)
    c = abs((x2 // g) * y1 - (x1 // g) * y2)
    a, b = top
    if a < 0:
        a, b = -a, -b
    return a, b % c, c


def validate(qs: QuotientSpec) -> int:
    """Check the generators and return the index (vertices per layer)."""
    for g in (qs.g1, qs.g2):
        if sum(g) != 0:
            raise QuotientError(f"generator {g} does not have coordinate sum zero")
    a, _, c = _hnf(qs.g1[:2], qs.g2[:2])
    shortest = min(
        max(abs(i * x + j * y) for x, y in zip(qs.g1, qs.g2))
        for i, j in itertools.product(range(-SEARCH_RANGE, SEARCH_RANGE + 1), repeat=2)
        if (i, j) != (0, 0)
    )
    if shortest < MIN_DISPLACEMENT:
        raise QuotientError(f"displacement {shortest} < {MIN_DISPLACEMENT}: quotient too small")
    return a * c


class OrbitTable:
    """Canonical orbit representatives for points (doubled coordinates)."""

    def __init__(self, qs: QuotientSpec):
        self.qs = qs
        self.index = validate(qs)
        a, b, c = _hnf(qs.g1[:2], qs.g2[:2])
        # doubled coordinates: the translation lattice doubles too
        self.a, self.b, self.c = 2 * a, 2 * b, 2 * c

    def rep(self, p: Point) -> Point:
        x1, x2, x3 = p
        s = x1 + x2 + x3
        k = x1 // self.a
        x1 -= k * self.a
        x2 -= k * self.b
        x2 %= self.c
        return (x1, x2, s - x1 - x2)

    def same_orbit(self, p: Point, q: Point) -> bool:
        return self.rep(p) == self.rep(q)


_OFFSETS = [o for o in itertools.product((-2, 0, 2), repeat=3) if any(o)]


def build_quotient(spec: LayeredSpec, qs: QuotientSpec, table: OrbitTable | None = None) -> FiniteGraph:
    if spec.d != 3 or spec.level_doubled is None:
        raise QuotientError("quotients are defined for layered graphs with d=3")
    table = table or OrbitTable(qs)
    parity = 0 if spec.kind == PRIMAL else 1
    N = spec.level_doubled
    labels = []
    for s in range(-N, N + 1):
        if s % 2 != spec.sum_parity:
            continue
        for x1 in range(parity, table.a, 2):
            for x2 in range(parity, table.c, 2):
                labels.append((x1, x2, s - x1 - x2))
    labels.sort()
    index = {p: i for i, p in enumerate(labels)}
    adjacency = []
    for p in labels:
        nbrs = set()
        for o in _OFFSETS:
            q = (p[0] + o[0], p[1] + o[1], p[2] + o[2])
            if abs(sum(q)) <= N:
                nbrs.add(index[table.rep(q)])
        if index[p] in nbrs:
            raise QuotientTooSmallError(f"translation maps {p} to a neighbour")
        adjacency.append(frozenset(nbrs))
    meta = {"construction": "quotient", "spec": str(spec), "quotient": qs.to_json(), "index": table.index}
    return FiniteGraph(len(labels), tuple(adjacency), tuple(labels), meta)


def lift_clique(points: list[Point], table: OrbitTable, spec: LayeredSpec, anchor: int = 0) -> list[Point]:
    """Lift orbit representatives to pairwise adjacent points of the layered
    graph, keeping ``points[anchor]`` fixed."""
    base = points[anchor]
    lifted = []
    for r in points:
        if r == base:
            lifted.append(base)
            continue
        hits = [
            q for o in _OFFSETS
            if in_layered(q := (base[0] + o[0], base[1] + o[1], base[2] + o[2]), spec) and table.rep(q) == r
        ]
        if len(hits) != 1:
            raise QuotientTooSmallError(f"{r} has {len(hits)} lifts next to {base}")
        lifted.append(hits[0])
    for p, q in itertools.combinations(lifted, 2):
        if max(abs(x - y) for x, y in zip(p, q)) != 2:
            raise QuotientTooSmallError(f"lift of {points} is not complete")
    return lifted


@dataclass
class Descent:
    cliques: CliqueList
    target: FiniteGraph
    mapping: dict[int, int]


def descend_iota(
    g: FiniteGraph,
    spec: LayeredSpec,
    qs: QuotientSpec,
    cliques: CliqueList | None = None,
    table: OrbitTable | None = None,
) -> Descent:
    """Map each clique of the labelled quotient ``g`` of ``spec`` to the
    orbit of the centroid of its extension.

    The lift is computed from two different anchors and the resulting
    orbits must agree (translation equivariance of the centroid map).
    """
    table = table or OrbitTable(qs)
    succ = predicted_successor(spec)
    target = build_quotient(succ, qs, table)
    if cliques is None:
        cliques = maximal_cliques(g)
    labels = g.labels
    mapping = {}
    for i, c in enumerate(cliques):
        pts = [labels[v] for v in c]
        reps = set()
        for anchor in {0, len(pts) - 1}:
            lifted = lift_clique(pts, table, spec, anchor)
            try:
                cube = extension_of(lifted, spec)
            except ExtensionError as exc:
                raise QuotientTooSmallError(f"clique {pts} of the quotient: {exc}") from None
            reps.add(table.rep(cube_centroid(cube)))
        if len(reps) != 1:
            raise QuotientError(f"centroid of clique {pts} depends on the lift")
        mapping[i] = target.label_index[reps.pop()]
    return Descent(cliques, target, mapping)


def layered_spec_for_step(m: int) -> LayeredSpec:
    """Predicted form of ``k^m Hex``: ``G_3(m/2)`` or ``G_3*(m/2)``."""
    return LayeredSpec(3, PRIMAL if m % 2 == 0 else DUAL, m)


def verify_quotient_theorem(
    qs: QuotientSpec,
    max_steps: int,
    cap: int = 200000,
    cross_check_step: int | None = None,
) -> ClaimReport:
    """Brute-force ``k^m (Hex/Gamma)`` for ``m <= max_steps`` and match each
    against the predicted layered quotient via the descended centroid map."""
    table = OrbitTable(qs)
    hex_spec = layered_spec_for_step(0)
    T = build_quotient(hex_spec, qs, table)
    graphs, run = iterate(T, max_steps, cap)
    report = ClaimReport("quotient", hex_spec, None, True, details={"gens": str(qs), "index": table.index})
    if cross_check_step is None:
        cross_check_step = max_steps
    steps: list[dict[str, Any]] = []
    phi = {v: v for v in range(T.vertex_count)}
    predicted = T
    for m, (gm, rec) in enumerate(zip(graphs, run.records)):
        spec_m = layered_spec_for_step(m)
        if m > 0:
            prev_spec = layered_spec_for_step(m - 1)
            relabelled = graphs[m - 1].with_labels([predicted.labels[phi[v]] for v in range(graphs[m - 1].vertex_count)])
            descent = descend_iota(relabelled, prev_spec, qs, run.clique_lists[m - 1], table)
            predicted, phi = descent.target, descent.mapping
        row = {
            "step": m,
            "predicted": str(spec_m),
            "vertices": gm.vertex_count,
            "expected_vertices": (m + 1) * table.index,
            "max_degree": rec.max_degree,
            "max_clique": rec.max_clique_size,
            "explicit_map": check_isomorphism_map(gm, predicted, phi),
        }
        if m == cross_check_step:
            found = find_isomorphism(gm, predicted)
            row["search_map"] = found is not None and check_isomorphism_map(gm, predicted, found)
        steps.append(row)
        ok = (
            row["explicit_map"]
            and row.get("search_map", True)
            and gm.vertex_count == row["expected_vertices"]
            and rec.max_degree <= 26
            and rec.max_clique_size <= 8
        )
        if not ok and report.passed:
            report.passed = False
            report.counterexample = {"reason": "step does not match prediction", "step": row}
    report.details["steps"] = steps
    return report


def local_structure_check(spec: LayeredSpec, qs: QuotientSpec, radius: int = 2) -> bool:
    """Balls of the given radius in the quotient look like balls in the
    layered graph: compared for one vertex per layer."""
    table = OrbitTable(qs)
    q = build_quotient(spec, qs, table)
    parity = 0 if spec.kind == PRIMAL else 1
    seen_layers = set()
    window = None
    for v, p in enumerate(q.labels):
        s = sum(p)
        if s in seen_layers:
            continue
        seen_layers.add(s)
        # point of the same layer as close to the origin as possible
        base, extra = divmod((s - 3 * parity) // 2, 3)
        centre = tuple(2 * (base + (i < extra)) + parity for i in range(3))
        if window is None:
            window = build_window(spec, WindowSpec(radius + max(abs(c) for c in centre) // 2 + 2, 0))
        ball_q = _ball(q, v, radius)
        ball_w = _ball(window, window.label_index[centre], radius)
        if find_isomorphism(induced_subgraph(q, ball_q), induced_subgraph(window, ball_w)) is None:
            return False
    return True


def _ball(g: FiniteGraph, v: int, radius: int) -> list[int]:
    frontier = {v}
    seen = {v}
    for _ in range(radius):
        frontier = {w for u in frontier for w in g.adjacency[u]} - seen
        seen |= frontier
    return sorted(seen)
