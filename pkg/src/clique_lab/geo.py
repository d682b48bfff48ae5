"""Triangular subgraphs of the hexagonal lattice cut out by orthants.

A point ``x`` of the integer or half-integer lattice (d=3) is sent to
``T_x = Hex ∩ (2x + O±)`` where ``O+``/``O-`` are the closed positive and
negative orthants.  In doubled coordinates ``2x`` is simply the doubled
tuple read as an integer vector.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import FiniteGraph
from .lattice import LayeredSpec, Point, WindowSpec, build_window, kind_of, linf_adjacent
from .theorem import ClaimReport

UP = "up"
DOWN = "down"
POINT = "point"


@dataclass(frozen=True)
class Orthant:
    sign: str
    apex: tuple[int, ...]

    def contains(self, y) -> bool:
        if self.sign == "+":
            return all(a >= b for a, b in zip(y, self.apex))
        return all(a <= b for a, b in zip(y, self.apex))


@dataclass(frozen=True)
class TriangleSubgraph:
    """Vertices are doubled-coordinate primal points of Hex."""

    vertices: tuple[Point, ...]
    side_length: int
    orientation: str


def _compositions(total: int):
    for a in range(total + 1):
        for b in range(total - a + 1):
            yield a, b, total - a - b


def triangle_of(x: Point) -> TriangleSubgraph:
    if len(x) != 3:
        raise ValueError("orthant triangles are defined for d=3")
    kind_of(x)
    apex = tuple(x)  # whole coordinates of 2x
    s = sum(apex)
    if s <= 0:
        # only the positive orthant reaches the zero-sum plane
        pts = [tuple(a + z for a, z in zip(apex, zs)) for zs in _compositions(-s)]
    else:
        pts = [tuple(a - z for a, z in zip(apex, zs)) for zs in _compositions(s)]
    vertices = tuple(sorted(tuple(2 * c for c in y) for y in pts))
    orientation = POINT if s == 0 else (UP if s < 0 else DOWN)
    return TriangleSubgraph(vertices, abs(s), orientation)


def apex_of(t: TriangleSubgraph) -> Point:
    """Recover ``x`` from ``T_x`` (inverse of :func:`triangle_of`)."""
    whole = [tuple(c // 2 for c in v) for v in t.vertices]
    if t.orientation == DOWN:
        return tuple(max(col) for col in zip(*whole))
    return tuple(min(col) for col in zip(*whole))


def triangle_adjacency(a: TriangleSubgraph, b: TriangleSubgraph) -> bool:
    """Adjacency of triangles pulled back from the lattice graphs through
    ``x -> T_x``; triangles of different side-length parity never meet."""
    x, y = apex_of(a), apex_of(b)
    if kind_of(x) != kind_of(y):
        return False
    return linf_adjacent(x, y)


def triangle_table(g: FiniteGraph) -> dict[Point, TriangleSubgraph]:
    return {x: triangle_of(x) for x in g.labels}


def side_length_law(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    """Side lengths over a window: ``m = 2|sum x|``, sizes ``(m+1)(m+2)/2``,
    and the attained lengths are exactly those ``<= 2n`` of the parity of
    ``2n``."""
    g = build_window(spec, w)
    report = ClaimReport("side-length", spec, w, True)
    attained = set()
    for x in g.labels:
        t = triangle_of(x)
        m = t.side_length
        problem = None
        if m != abs(sum(x)):
            problem = "side length is not twice the coordinate sum"
        elif len(t.vertices) != (m + 1) * (m + 2) // 2:
            problem = "triangle has the wrong number of vertices"
        elif any(sum(v) != 0 for v in t.vertices):
            problem = "triangle leaves the hexagonal layer"
        if problem:
            report.passed = False
            report.counterexample = {"reason": problem, "point": list(x)}
            return report
        attained.add(m)
    N = spec.level_doubled
    expected = set(range(N % 2, N + 1, 2))
    report.details = {"attained": sorted(attained), "expected": sorted(expected)}
    if attained != expected:
        report.passed = False
        report.counterexample = {"reason": "attained side lengths differ from the prediction"}
    return report


def injectivity_check(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    g = build_window(spec, w)
    report = ClaimReport("injectivity", spec, w, True)
    seen: dict[tuple[Point, ...], Point] = {}
    for x in g.labels:
        key = triangle_of(x).vertices
        if key in seen:
            report.passed = False
            report.counterexample = {"reason": "two points share a triangle", "points": [list(seen[key]), list(x)]}
            return report
        seen[key] = x
    report.details["points"] = len(seen)
    return report


def render_ascii(t: TriangleSubgraph, pad: int = 1) -> str:
    """Draw the triangle on the hexagonal grid: ``*`` marks its vertices,
    ``.`` the surrounding lattice points."""
    whole = [tuple(c // 2 for c in v) for v in t.vertices]
    cells = {(2 * y[0] + y[2], y[2]) for y in whole}
    inside = set(cells)
    qs = [y[0] for y in whole]
    rs = [y[2] for y in whole]
    for q in range(min(qs) - pad, max(qs) + pad + 1):
        for r in range(min(rs) - pad, max(rs) + pad + 1):
            cells.add((2 * q + r, r))
    cols = [c for c, _ in cells]
    lo_c, hi_c = min(cols), max(cols)
    lo_r, hi_r = min(rs) - pad, max(rs) + pad
    lines = []
    for r in range(lo_r, hi_r + 1):
        line = [" "] * (hi_c - lo_c + 1)
        for c, rr in cells:
            if rr == r:
                line[c - lo_c] = "*" if (c, rr) in inside else "."
        lines.append("".join(line).rstrip())
    return "\n".join(lines) + "\n"
