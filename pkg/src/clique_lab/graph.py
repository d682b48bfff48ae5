"""Finite simple graphs on dense vertex indices.

Every construction in the package (lattice windows, torus quotients, clique
graphs) produces a :class:`FiniteGraph`.  Vertices are ``0..n-1``; optional
labels carry lattice points so that identity across reindexing goes through
labels, never through indices.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

INF = float("inf")

DEFAULT_ISO_CAP = 20000


class GraphError(ValueError):
    pass


class SizeGuardError(GraphError):
    """Raised when an operation would exceed its configured vertex cap."""


@dataclass(frozen=True, eq=False)
class FiniteGraph:
    vertex_count: int
    adjacency: tuple[frozenset[int], ...]
    labels: tuple[tuple[int, ...], ...] | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise GraphError("adjacency length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.vertex_count:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adjacency[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.labels is not None:
            if len(self.labels) != self.vertex_count:
                raise GraphError("label count does not match vertex_count")
            if len(set(self.labels)) != len(self.labels):
                raise GraphError("labels are not pairwise distinct")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[tuple[int, ...]] | None = None,
        meta: Mapping[str, Any] | None = None,
    ) -> FiniteGraph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(
            n,
            tuple(frozenset(a) for a in adj),
            tuple(tuple(p) for p in labels) if labels is not None else None,
            dict(meta or {}),
        )

    def __eq__(self, other):
        # meta is provenance only and does not take part in equality
        if not isinstance(other, FiniteGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.adjacency == other.adjacency
            and self.labels == other.labels
        )

    __hash__ = None  # type: ignore[assignment]

    def __len__(self):
        return self.vertex_count

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(i, j)`` with ``i < j`` in sorted order."""
        return [(u, v) for u in range(self.vertex_count) for v in sorted(self.adjacency[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def label_index(self) -> dict[tuple[int, ...], int]:
        if self.labels is None:
            raise GraphError("graph carries no labels")
        return {p: i for i, p in enumerate(self.labels)}

    def with_labels(self, labels: Sequence[tuple[int, ...]] | None, **meta) -> FiniteGraph:
        new_meta = dict(self.meta)
        new_meta.update(meta)
        return FiniteGraph(
            self.vertex_count,
            self.adjacency,
            tuple(tuple(p) for p in labels) if labels is not None else None,
            new_meta,
        )


def _check_vertex(g: FiniteGraph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range for graph with {g.vertex_count} vertices")


def degree(g: FiniteGraph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adjacency[v])


def connected_components(g: FiniteGraph) -> list[list[int]]:
    """Vertex partition into components, each sorted, ordered by smallest member."""
    seen = [False] * g.vertex_count
    blocks = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        block = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    block.append(w)
                    queue.append(w)
        blocks.append(sorted(block))
    return blocks


def distance(g: FiniteGraph, s: Iterable[int], t: Iterable[int]) -> float:
    """Fewest hops between any vertex of ``s`` and any vertex of ``t``.

    Multi-source BFS from ``s``; returns ``inf`` when ``t`` is unreachable.
    """
    sources = sorted(set(s))
    targets = set(t)
    if not sources or not targets:
        raise GraphError("distance needs two nonempty vertex sets")
    for v in sources:
        _check_vertex(g, v)
    for v in targets:
        _check_vertex(g, v)
    dist = {v: 0 for v in sources}
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        if u in targets:
            return dist[u]
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return INF


def induced_subgraph(g: FiniteGraph, s: Iterable[int]) -> FiniteGraph:
    keep = sorted(set(s))
    for v in keep:
        _check_vertex(g, v)
    index = {v: i for i, v in enumerate(keep)}
    adjacency = tuple(frozenset(index[w] for w in g.adjacency[v] if w in index) for v in keep)
    labels = tuple(g.labels[v] for v in keep) if g.labels is not None else None
    meta = dict(g.meta)
    meta["induced_from"] = g.vertex_count
    return FiniteGraph(len(keep), adjacency, labels, meta)


def _as_mapping(f: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    if isinstance(f, Mapping):
        return dict(f)
    return dict(enumerate(f))


def check_isomorphism_map(g: FiniteGraph, h: FiniteGraph, f: Mapping[int, int] | Sequence[int]) -> bool:
    """True iff ``f`` is an isomorphism from ``g`` onto ``h``.

    Raises :class:`GraphError` when ``f`` is not a bijection between the
    vertex sets.
    """
    f = _as_mapping(f)
    n = g.vertex_count
    if (
        h.vertex_count != n
        or sorted(f) != list(range(n))
        or sorted(f.values()) != list(range(n))
    ):
        raise GraphError("map is not a bijection between the vertex sets")
    for u in range(n):
        image = {f[w] for w in g.adjacency[u]}
        if image != h.adjacency[f[u]]:
            return False
    return True


def _refine_jointly(g: FiniteGraph, h: FiniteGraph) -> tuple[list[int], list[int]] | None:
    """Colour refinement run on both graphs with one shared palette.

    Returns ``None`` as soon as the colour histograms differ, which proves
    the graphs non-isomorphic.
    """
    cg = [len(a) for a in g.adjacency]
    ch = [len(a) for a in h.adjacency]
    classes = -1
    while True:
        if Counter(cg) != Counter(ch):
            return None
        count = len(set(cg))
        if count == classes:
            return cg, ch
        classes = count
        sig_g = [(cg[v], tuple(sorted(cg[w] for w in g.adjacency[v]))) for v in range(g.vertex_count)]
        sig_h = [(ch[v], tuple(sorted(ch[w] for w in h.adjacency[v]))) for v in range(h.vertex_count)]
        palette = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        cg = [palette[s] for s in sig_g]
        ch = [palette[s] for s in sig_h]


def _matching_order(g: FiniteGraph, colors: list[int]) -> list[int]:
    """Order vertices so that each one (after the first of its component)
    has an already ordered neighbour; start from the rarest colour class."""
    class_size = Counter(colors)
    n = g.vertex_count
    placed = [False] * n
    order: list[int] = []
    mapped_nbrs = [0] * n
    for start in sorted(range(n), key=lambda v: (class_size[colors[v]], -len(g.adjacency[v]), v)):
        if placed[start]:
            continue
        frontier = {start}
        while frontier:
            # most constrained: most already-ordered neighbours, then rarest colour
            v = min(frontier, key=lambda x: (-mapped_nbrs[x], class_size[colors[x]], x))
            frontier.discard(v)
            placed[v] = True
            order.append(v)
            for w in g.adjacency[v]:
                if not placed[w]:
                    mapped_nbrs[w] += 1
                    frontier.add(w)
    return order


def find_isomorphism(g: FiniteGraph, h: FiniteGraph, cap: int = DEFAULT_ISO_CAP) -> dict[int, int] | None:
    """Search for an isomorphism ``g -> h``; ``None`` if none exists.

    Colour refinement prunes candidates, then a depth-first matcher extends a
    partial map one vertex at a time in a connectivity-first order.  The
    result is deterministic for fixed inputs.
    """
    if max(g.vertex_count, h.vertex_count) > cap:
        raise SizeGuardError(f"isomorphism search capped at {cap} vertices")
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    if n == 0:
        return {}
    refined = _refine_jointly(g, h)
    if refined is None:
        return None
    cg, ch = refined
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(ch[v], []).append(v)

    order = _matching_order(g, cg)
    position = {v: i for i, v in enumerate(order)}
    # for each g-vertex: its neighbours that come earlier in the order
    earlier = [sorted((w for w in g.adjacency[v] if position[w] < position[v]), key=position.get) for v in order]

    fwd: dict[int, int] = {}
    used = [False] * n

    def candidates(i: int) -> list[int]:
        v = order[i]
        prev = earlier[i]
        if prev:
            anchor = fwd[prev[0]]
            pool = sorted(w for w in h.adjacency[anchor] if not used[w] and ch[w] == cg[v])
        else:
            pool = [w for w in by_color[cg[v]] if not used[w]]
        need = {fwd[u] for u in prev}
        n_prev = len(prev)
        out = []
        for w in pool:
            hn = h.adjacency[w]
            if not need <= hn:
                continue
            # w must not be adjacent to images of non-neighbours of v
            if sum(1 for x in hn if used[x]) != n_prev:
                continue
            out.append(w)
        return out

    stack = [iter(candidates(0))]
    while stack:
        i = len(stack) - 1
        v = order[i]
        if v in fwd:
            used[fwd.pop(v)] = False
        w = next(stack[-1], None)
        if w is None:
            stack.pop()
            continue
        fwd[v] = w
        used[w] = True
        if i + 1 == n:
            return dict(sorted(fwd.items()))
        stack.append(iter(candidates(i + 1)))
    return None
