"""Integer and half-integer lattice points, layered graphs and unit cubes.

Points are stored as tuples of *doubled* coordinates: ``(1, -1, 0)`` is
``(2, -2, 0)`` and ``(1/2, 1/2, 1/2)`` is ``(1, 1, 1)``.  A point is primal
when every doubled coordinate is even and dual when every one is odd.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import FiniteGraph

Point = tuple[int, ...]

PRIMAL = "primal"
DUAL = "dual"


class LatticeError(ValueError):
    pass


def make_point(coords: Iterable[int | Fraction | str]) -> Point:
    """Build a point from actual (not doubled) coordinates.

    >>> make_point([Fraction(1, 2), Fraction(-1, 2), "1/2"])
    (1, -1, 1)
    """
    doubled = []
    for c in coords:
        value = 2 * Fraction(c)
        if value.denominator != 1:
            raise LatticeError(f"coordinate {c} is not a multiple of 1/2")
        doubled.append(int(value))
    p = tuple(doubled)
    kind_of(p)
    return p


def kind_of(p: Point) -> str:
    if not p:
        raise LatticeError("a point needs at least one coordinate")
    parities = {c % 2 for c in p}
    if len(parities) != 1:
        raise LatticeError(f"mixed parity in doubled point {p}")
    return DUAL if parities.pop() else PRIMAL


def format_point(p: Point) -> str:
    return "(" + ",".join(str(Fraction(c, 2)) for c in p) + ")"


def linf_adjacent(p: Point, q: Point) -> bool:
    if len(p) != len(q):
        raise LatticeError("points of different dimension")
    if kind_of(p) != kind_of(q):
        raise LatticeError("points from different lattices")
    return max(abs(a - b) for a, b in zip(p, q)) == 2


def _neighbor_offsets(d: int) -> list[tuple[int, ...]]:
    return [o for o in itertools.product((-2, 0, 2), repeat=d) if any(o)]


@dataclass(frozen=True)
class LayeredSpec:
    """``G_d(n)`` (primal) or ``G_d*(n)`` (dual) with ``level_doubled = 2n``.

    ``level_doubled=None`` stands for the whole unrestricted lattice graph.
    """

    d: int
    kind: str = PRIMAL
    level_doubled: int | None = 0

    def __post_init__(self):
        if self.d < 1:
            raise LatticeError(f"dimension must be >= 1, got {self.d}")
        if self.kind not in (PRIMAL, DUAL):
            raise LatticeError(f"unknown kind {self.kind!r}")
        N = self.level_doubled
        if N is None:
            return
        if N < 0:
            raise LatticeError("level must be nonnegative")
        if N % 2 != self.sum_parity:
            raise LatticeError(
                f"level n={Fraction(N, 2)} is not attainable as a coordinate sum of the {self.kind} lattice in d={self.d}"
            )

    @property
    def sum_parity(self) -> int:
        """Parity of doubled coordinate sums of the points of this lattice."""
        return self.d % 2 if self.kind == DUAL else 0

    @property
    def level(self) -> Fraction | None:
        return None if self.level_doubled is None else Fraction(self.level_doubled, 2)

    @property
    def unrestricted(self) -> LayeredSpec:
        return LayeredSpec(self.d, self.kind, None)

    def __str__(self):
        head = "G*" if self.kind == DUAL else "G"
        if self.level_doubled is None:
            return f"{head}:d={self.d}"
        return f"{head}:d={self.d},n={Fraction(self.level_doubled, 2)}"

    def to_json(self) -> dict:
        return {"d": self.d, "kind": self.kind, "level_doubled": self.level_doubled}


_SPEC_RE = re.compile(r"^\s*(G\*?)\s*:\s*(.*)$")


def parse_spec(text: str) -> LayeredSpec:
    """Parse ``"G:d=3,n=1"``, ``"G*:d=3,n=3/2"`` or ``"G:d=4"``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise LatticeError(f"cannot parse spec {text!r}")
    kind = DUAL if m.group(1) == "G*" else PRIMAL
    fields = {}
    for part in filter(None, (s.strip() for s in m.group(2).split(","))):
        key, sep, value = part.partition("=")
        if not sep or key.strip() not in ("d", "n"):
            raise LatticeError(f"bad field {part!r} in spec {text!r}")
        fields[key.strip()] = value.strip()
    if "d" not in fields:
        raise LatticeError(f"spec {text!r} lacks d")
    try:
        d = int(fields["d"])
        level = None
        if "n" in fields:
            n2 = 2 * Fraction(fields["n"])
            if n2.denominator != 1:
                raise LatticeError(f"n must be a multiple of 1/2 in {text!r}")
            level = int(n2)
    except (ValueError, ZeroDivisionError) as exc:
        raise LatticeError(f"cannot parse spec {text!r}: {exc}") from None
    return LayeredSpec(d, kind, level)


def in_layered(p: Point, spec: LayeredSpec) -> bool:
    if len(p) != spec.d:
        raise LatticeError("dimension mismatch")
    if kind_of(p) != spec.kind:
        raise LatticeError(f"point {p} is not in the {spec.kind} lattice")
    return spec.level_doubled is None or abs(sum(p)) <= spec.level_doubled


@dataclass(frozen=True)
class WindowSpec:
    radius: int
    margin: int = 2

    def __post_init__(self):
        if self.radius < 1:
            raise LatticeError("window radius must be positive")
        if not 0 <= self.margin < self.radius:
            raise LatticeError("window margin must satisfy 0 <= margin < radius")

    def to_json(self) -> dict:
        return {"radius": self.radius, "margin": self.margin}


def box_points(d: int, kind: str, radius: int) -> list[Point]:
    """All lattice points with every |coordinate| <= radius, lexicographic."""
    bound = 2 * radius
    start = -bound if kind == PRIMAL else -bound + 1
    axis = range(start, bound + 1, 2)
    return list(itertools.product(axis, repeat=d))


def build_window(spec: LayeredSpec, w: WindowSpec) -> FiniteGraph:
    labels = [p for p in box_points(spec.d, spec.kind, w.radius) if in_layered(p, spec)]
    if not labels:
        raise LatticeError(f"{spec} has no points in a radius-{w.radius} box")
    index = {p: i for i, p in enumerate(labels)}
    offsets = _neighbor_offsets(spec.d)
    adjacency = []
    for p in labels:
        nbrs = []
        for o in offsets:
            j = index.get(tuple(a + b for a, b in zip(p, o)))
            if j is not None:
                nbrs.append(j)
        adjacency.append(frozenset(nbrs))
    meta = {"construction": "window", "spec": str(spec), "window": w.to_json()}
    return FiniteGraph(len(labels), tuple(adjacency), tuple(labels), meta)


def within_radius(p: Point, doubled_bound: int) -> bool:
    return all(abs(c) <= doubled_bound for c in p)


@dataclass(frozen=True, order=True)
class Cube:
    """The unit cube ``base + {0,1}^d`` (a clique of the lattice graph)."""

    base: Point

    @property
    def d(self) -> int:
        return len(self.base)

    @property
    def kind(self) -> str:
        return kind_of(self.base)


def cube_vertices(c: Cube) -> list[Point]:
    return [tuple(b + 2 * e for b, e in zip(c.base, bits)) for bits in itertools.product((0, 1), repeat=c.d)]


def cube_centroid(c: Cube) -> Point:
    return tuple(b + 1 for b in c.base)


def cube_of_centroid(p: Point) -> Cube:
    return Cube(tuple(c - 1 for c in p))


def cubes_intersect(a: Cube, b: Cube) -> bool:
    return all(abs(x - y) <= 2 for x, y in zip(a.base, b.base))


def layer_profile(c: Cube) -> dict[Fraction, int]:
    """Coordinate sums of the cube's vertices with multiplicities."""
    counts = Counter(Fraction(sum(v), 2) for v in cube_vertices(c))
    return dict(sorted(counts.items()))


def cubes_containing(points: Sequence[Point]) -> list[Cube]:
    """Every unit cube whose vertex set contains all of ``points``."""
    d = len(points[0])
    per_axis = []
    for i in range(d):
        lo = min(p[i] for p in points)
        hi = max(p[i] for p in points)
        if hi - lo > 2:
            return []
        # base coordinate b with b <= lo and hi <= b + 2
        per_axis.append(range(hi - 2, lo + 1, 2))
    return [Cube(tuple(b)) for b in itertools.product(*per_axis)]
