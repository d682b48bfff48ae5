"""Executable checks of the layered clique-graph theorem and its claims.

Everything is decided exhaustively inside a finite box window.  A maximal
clique of the window all of whose vertices lie at least one step inside the
box is a maximal clique of the infinite layered graph (any vertex extending
it would sit inside the box), so window computations are exact there.
"Interior" objects are those whose unit cube lies ``margin`` steps inside
the box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .cliques import CliqueList, maximal_cliques
from .graph import INF, FiniteGraph, connected_components, distance, induced_subgraph
from .lattice import (
    DUAL,
    PRIMAL,
    Cube,
    LayeredSpec,
    LatticeError,
    Point,
    WindowSpec,
    build_window,
    cube_centroid,
    cube_vertices,
    cubes_containing,
    cubes_intersect,
    in_layered,
    linf_adjacent,
    parse_spec,
    within_radius,
)

CLAIM_IDS = ("1", "2", "3a", "3b", "4", "5", "main", "d4")

LATTICE_DEGREE_3D = 26


class ExcludedCaseError(ValueError):
    """The single-vertex graph ``G_1(0)`` is outside the theorem."""


class ExtensionError(ValueError):
    pass


class NoExtensionError(ExtensionError):
    pass


class AmbiguousExtensionError(ExtensionError):
    pass


class BoundaryCliqueError(ExtensionError):
    pass


@dataclass
class ClaimReport:
    claim: str
    spec: LayeredSpec | None
    window: WindowSpec | None
    passed: bool
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "spec": str(self.spec) if self.spec is not None else None,
            "window": self.window.to_json() if self.window is not None else None,
            "verdict": "pass" if self.passed else "fail",
            "counterexample": self.counterexample,
            "details": self.details,
        }


def _pts(points: Iterable[Point]) -> list[list[int]]:
    return [list(p) for p in points]


def _require_not_excluded(spec: LayeredSpec) -> None:
    if spec.d == 1 and spec.kind == PRIMAL and spec.level_doubled == 0:
        raise ExcludedCaseError("G_1(0) is a single vertex and is excluded")


def predicted_successor(spec: LayeredSpec) -> LayeredSpec:
    """The layered graph isomorphic to ``k`` of ``spec`` (for d in 1..3)."""
    if spec.d not in (1, 2, 3):
        raise ValueError(f"no successor law for d={spec.d}")
    if spec.level_doubled is None:
        return LayeredSpec(spec.d, DUAL if spec.kind == PRIMAL else PRIMAL, None)
    _require_not_excluded(spec)
    level = spec.level_doubled + spec.d - 2
    if level < 0:
        raise ValueError(f"{spec} has no successor: level would be negative")
    return LayeredSpec(spec.d, DUAL if spec.kind == PRIMAL else PRIMAL, level)


def extension_of(points: Iterable[Point], spec: LayeredSpec) -> Cube:
    """The unique unit cube whose trace on the layered set is ``points``."""
    pts = sorted(set(points))
    if len(pts) < 2:
        raise NoExtensionError(f"clique {pts} has fewer than two members")
    target = set(pts)
    matches = [
        c for c in cubes_containing(pts)
        if {v for v in cube_vertices(c) if in_layered(v, spec)} == target
    ]
    if not matches:
        raise NoExtensionError(f"no unit cube traces exactly {pts} on {spec}")
    if len(matches) > 1:
        raise AmbiguousExtensionError(f"{len(matches)} cubes trace {pts} on {spec}")
    return matches[0]


def _spec_window_of(g: FiniteGraph) -> tuple[LayeredSpec, WindowSpec | None]:
    try:
        spec = parse_spec(g.meta["spec"])
    except KeyError:
        raise ValueError("graph does not record the layered spec it was built from") from None
    w = g.meta.get("window")
    return spec, (WindowSpec(**w) if w else None)


def clique_extension(q: Iterable[int], g: FiniteGraph, spec: LayeredSpec | None = None) -> Cube:
    """Extension cube of the clique ``q`` (vertex indices of the window ``g``)."""
    window = None
    if spec is None:
        spec, window = _spec_window_of(g)
    elif "window" in g.meta:
        window = WindowSpec(**g.meta["window"])
    pts = [g.labels[v] for v in q]
    if window is not None and not all(within_radius(p, 2 * window.radius - 2) for p in pts):
        raise BoundaryCliqueError(f"clique {sorted(pts)} touches the window boundary")
    return extension_of(pts, spec)


def _cube_inside(c: Cube, doubled_bound: int) -> bool:
    return all(-doubled_bound <= b and b + 2 <= doubled_bound for b in c.base)


def _interior_cubes(d: int, kind: str, w: WindowSpec) -> list[Cube]:
    bound = 2 * (w.radius - w.margin)
    start = -bound if kind == PRIMAL else -bound + 1
    axis = range(start, bound - 1, 2)
    return [Cube(b) for b in itertools.product(axis, repeat=d)]


class _Window:
    """A layered window with its cliques and their extensions."""

    def __init__(self, spec: LayeredSpec, w: WindowSpec):
        self.spec = spec
        self.w = w
        self.graph = build_window(spec, w)
        self.cliques = maximal_cliques(self.graph)
        self.faithful_bound = 2 * w.radius - 2
        self.interior_bound = 2 * (w.radius - w.margin)
        labels = self.graph.labels
        self.faithful = [
            i for i, c in enumerate(self.cliques)
            if all(within_radius(labels[v], self.faithful_bound) for v in c)
        ]

    def points(self, i: int) -> list[Point]:
        labels = self.graph.labels
        return [labels[v] for v in self.cliques[i]]


@dataclass
class IotaMap:
    spec: LayeredSpec
    window: WindowSpec
    successor: LayeredSpec
    domain: CliqueList
    assignment: dict[int, Point]
    extensions: dict[int, Cube]


def iota(spec: LayeredSpec, w: WindowSpec) -> IotaMap:
    """Send each interior clique to the centroid of its extension cube."""
    succ = predicted_successor(spec)
    win = _Window(spec, w)
    extensions = {}
    assignment = {}
    for i in win.faithful:
        cube = extension_of(win.points(i), spec)
        if _cube_inside(cube, win.interior_bound):
            extensions[i] = cube
            assignment[i] = cube_centroid(cube)
    return IotaMap(spec, w, succ, win.cliques, assignment, extensions)


def verify_main_theorem(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    """Check ``k(spec) = predicted_successor(spec)`` on the window interior.

    The image of the centroid map must be exactly the interior of the
    successor window, the map must be injective, and clique intersection
    must correspond exactly to centroid adjacency.
    """
    succ = predicted_successor(spec)
    win = _Window(spec, w)
    report = ClaimReport("main", spec, w, True, details={"successor": str(succ)})

    extensions: dict[int, Cube] = {}
    for i in win.faithful:
        try:
            cube = extension_of(win.points(i), spec)
        except ExtensionError as exc:
            report.passed = False
            report.counterexample = {"reason": str(exc), "clique": _pts(win.points(i))}
            return report
        if _cube_inside(cube, win.interior_bound):
            extensions[i] = cube

    image: dict[Point, int] = {}
    for i, cube in extensions.items():
        p = cube_centroid(cube)
        if p in image:
            report.passed = False
            report.counterexample = {
                "reason": "two cliques share a centroid",
                "cliques": [_pts(win.points(image[p])), _pts(win.points(i))],
            }
            return report
        image[p] = i

    succ_window = build_window(succ, w)
    target_bound = win.interior_bound - 1
    target = {p for p in succ_window.labels if within_radius(p, target_bound)}
    if set(image) != target:
        missing = sorted(target - set(image))
        extra = sorted(set(image) - target)
        report.passed = False
        report.counterexample = {
            "reason": "centroid image differs from successor interior",
            "missing": _pts(missing[:5]),
            "unexpected": _pts(extra[:5]),
        }
        return report

    # clique intersection inside the layered graph vs centroid adjacency
    members = {i: set(win.cliques[i]) for i in extensions}
    by_vertex: dict[int, list[int]] = {}
    for i in extensions:
        for v in win.cliques[i]:
            by_vertex.setdefault(v, []).append(i)
    meet = set()
    for group in by_vertex.values():
        for a, b in itertools.combinations(sorted(group), 2):
            meet.add((a, b))
    adjacent = set()
    offsets = [o for o in itertools.product((-2, 0, 2), repeat=spec.d) if any(o)]
    for p, i in image.items():
        for o in offsets:
            j = image.get(tuple(a + b for a, b in zip(p, o)))
            if j is not None and i < j:
                adjacent.add((i, j))
    if meet != adjacent:
        a, b = min(meet ^ adjacent)
        report.passed = False
        report.counterexample = {
            "reason": "clique intersection and centroid adjacency disagree",
            "cliques": [_pts(win.points(a)), _pts(win.points(b))],
            "intersect": bool(members[a] & members[b]),
        }
        return report
    report.details.update(
        {"interior_cliques": len(extensions), "edges_checked": len(meet), "window_vertices": win.graph.vertex_count}
    )
    return report


def _claim_1(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    full = spec.unrestricted
    win = _Window(full, w)
    report = ClaimReport("1", full, w, True)
    labels = win.graph.labels
    bound = win.interior_bound
    seen = set()
    for c in win.cliques:
        pts = [labels[v] for v in c]
        if not all(within_radius(p, bound) for p in pts):
            continue
        cubes = cubes_containing(pts)
        if len(pts) != 2 ** spec.d or len(cubes) != 1 or set(cube_vertices(cubes[0])) != set(pts):
            report.passed = False
            report.counterexample = {"reason": "interior clique is not a unit cube", "clique": _pts(sorted(pts))}
            return report
        seen.add(cubes[0])
    for cube in _interior_cubes(spec.d, spec.kind, w):
        if cube not in seen:
            report.passed = False
            report.counterexample = {"reason": "interior cube is not a clique", "cube_base": list(cube.base)}
            return report
    report.details["interior_cliques"] = len(seen)
    return report


def _claim_2(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    report = ClaimReport("2", spec.unrestricted, w, True)
    cubes = _interior_cubes(spec.d, spec.kind, w)
    index = set(cubes)
    vertex_sets = {c: set(cube_vertices(c)) for c in cubes}
    offsets = [o for o in itertools.product(range(-4, 5, 2), repeat=spec.d) if any(o)]
    pairs = 0
    for c in cubes:
        for o in offsets:
            other = Cube(tuple(b + x for b, x in zip(c.base, o)))
            if other not in index or other < c:
                continue
            pairs += 1
            meet = bool(vertex_sets[c] & vertex_sets[other])
            if meet != linf_adjacent(cube_centroid(c), cube_centroid(other)):
                report.passed = False
                report.counterexample = {
                    "reason": "cube intersection and centroid adjacency disagree",
                    "cube_bases": [list(c.base), list(other.base)],
                    "intersect": meet,
                }
                return report
    report.details["cube_pairs"] = pairs
    return report


def _interior_layered(win: _Window) -> list[int]:
    labels = win.graph.labels
    return [i for i in win.faithful if all(within_radius(labels[v], win.interior_bound) for v in win.cliques[i])]


def _claim_3a(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    win = _Window(spec, w)
    report = ClaimReport("3a", spec, w, True)
    checked = 0
    for i in _interior_layered(win):
        pts = win.points(i)
        try:
            extension_of(pts, spec)
        except ExtensionError as exc:
            report.passed = False
            report.counterexample = {"reason": str(exc), "clique": _pts(pts)}
            return report
        checked += 1
    report.details["cliques_checked"] = checked
    return report


def _claim_3b(spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    win = _Window(spec, w)
    report = ClaimReport("3b", spec, w, True)
    interior = _interior_layered(win)
    ext: dict[int, Cube] = {}
    for i in interior:
        try:
            ext[i] = extension_of(win.points(i), spec)
        except ExtensionError as exc:
            report.passed = False
            report.counterexample = {"reason": str(exc), "clique": _pts(win.points(i))}
            return report
    by_base: dict[Point, int] = {c.base: i for i, c in ext.items()}
    members = {i: set(win.cliques[i]) for i in interior}
    candidates = set()
    by_vertex: dict[int, list[int]] = {}
    for i in interior:
        for v in win.cliques[i]:
            by_vertex.setdefault(v, []).append(i)
    for group in by_vertex.values():
        candidates.update(itertools.combinations(sorted(group), 2))
    offsets = list(itertools.product((-2, 0, 2), repeat=spec.d))
    for i, c in ext.items():
        for o in offsets:
            j = by_base.get(tuple(b + x for b, x in zip(c.base, o)))
            if j is not None and i < j:
                candidates.add((i, j))
    for i, j in sorted(candidates):
        meet = bool(members[i] & members[j])
        ext_meet = cubes_intersect(ext[i], ext[j])
        if meet != ext_meet:
            shared = sorted(set(cube_vertices(ext[i])) & set(cube_vertices(ext[j])))
            report.passed = False
            report.counterexample = {
                "reason": "cliques are disjoint but their extensions meet" if ext_meet
                else "cliques meet but their extensions are disjoint",
                "cliques": [_pts(win.points(i)), _pts(win.points(j))],
                "cube_bases": [list(ext[i].base), list(ext[j].base)],
                "cube_intersection": _pts(shared),
            }
            return report
    report.details["pairs_checked"] = len(candidates)
    return report


def _claim_4_5(claim: str, spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    report = ClaimReport(claim, spec, w, True)
    win = _Window(spec, w) if claim == "4" else None
    if win is not None:
        ext_bases = set()
        for i in win.faithful:
            try:
                ext_bases.add(extension_of(win.points(i), spec).base)
            except ExtensionError as exc:
                report.passed = False
                report.counterexample = {"reason": str(exc), "clique": _pts(win.points(i))}
                return report
        clique_sets = {frozenset(win.points(i)) for i in win.faithful}
    threshold = spec.level_doubled + spec.d - 2
    cubes = _interior_cubes(spec.d, spec.kind, w)
    for cube in cubes:
        trace = [v for v in cube_vertices(cube) if in_layered(v, spec)]
        big = len(trace) >= 2
        if claim == "4":
            is_ext = cube.base in ext_bases
            ok = big == is_ext and (not big or frozenset(trace) in clique_sets)
        else:
            ok = big == (abs(sum(cube_centroid(cube))) <= threshold)
        if not ok:
            report.passed = False
            report.counterexample = {
                "reason": "trace size disagrees with " + ("extension status" if claim == "4" else "centroid sum bound"),
                "cube_base": list(cube.base),
                "trace": _pts(trace),
            }
            return report
    report.details["cubes_checked"] = len(cubes)
    if claim == "5":
        report.details["centroid_sum_bound"] = str(Fraction(threshold, 2))
    return report


def verify_claim(claim: str, spec: LayeredSpec, w: WindowSpec) -> ClaimReport:
    """Exhaustive window check of one claim; failures are verdicts, not errors.

    Claims 1 and 2 concern the unrestricted lattice graph of the same
    dimension and lattice as ``spec``.
    """
    claim = str(claim)
    if claim not in CLAIM_IDS:
        raise ValueError(f"unknown claim {claim!r}; expected one of {CLAIM_IDS}")
    if claim == "d4":
        return counterexample_d4()
    if claim == "main":
        return verify_main_theorem(spec, w)
    if claim == "1":
        return _claim_1(spec, w)
    if claim == "2":
        return _claim_2(spec, w)
    if spec.level_doubled is None:
        raise ValueError(f"claim {claim} needs a layered spec with a level")
    _require_not_excluded(spec)
    if claim == "3a":
        return _claim_3a(spec, w)
    if claim == "3b":
        return _claim_3b(spec, w)
    return _claim_4_5(claim, spec, w)


D4_CUBES = (Cube((2, -2, 0, 0)), Cube((0, 0, 2, -2)))


def counterexample_d4() -> ClaimReport:
    """Two unit cubes of ``G_4`` meeting in one point whose traces on
    ``G_4(1)`` are disjoint although each has at least two vertices."""
    spec = LayeredSpec(4, PRIMAL, 2)
    a, b = (set(cube_vertices(c)) for c in D4_CUBES)
    shared = sorted(a & b)
    trace_a = sorted(v for v in a if in_layered(v, spec))
    trace_b = sorted(v for v in b if in_layered(v, spec))
    singleton = shared == [(2, 0, 2, 0)]
    big = len(trace_a) >= 2 and len(trace_b) >= 2
    disjoint = not set(trace_a) & set(trace_b)
    details = {
        "cube_bases": [list(c.base) for c in D4_CUBES],
        "cube_intersection": _pts(shared),
        "traces": [_pts(trace_a), _pts(trace_b)],
        "intersection_is_singleton": singleton,
        "both_traces_have_two_vertices": big,
        "traces_disjoint": disjoint,
    }
    passed = singleton and big and disjoint
    counterexample = None if passed else {"reason": "d=4 configuration not reproduced"}
    return ClaimReport("d4", spec, None, passed, counterexample, details)


def divergence_witness(g: FiniteGraph, full_degree: int = LATTICE_DEGREE_3D) -> tuple[int, float]:
    """Components of the subgraph on vertices of degree < ``full_degree``
    and the least distance in ``g`` between two of them."""
    low = [v for v in range(g.vertex_count) if len(g.adjacency[v]) < full_degree]
    if not low:
        return 0, INF
    h = induced_subgraph(g, low)
    blocks = [[low[v] for v in block] for block in connected_components(h)]
    if len(blocks) < 2:
        return len(blocks), INF
    best = INF
    for a, b in itertools.combinations(blocks, 2):
        best = min(best, distance(g, a, b))
    return len(blocks), best
