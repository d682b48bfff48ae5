"""Maximal cliques, the clique graph operator ``k`` and its iteration."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .graph import FiniteGraph, SizeGuardError

DEFAULT_ITERATE_CAP = 200000

Clique = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CliqueList:
    source: FiniteGraph
    cliques: tuple[Clique, ...]

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __getitem__(self, i):
        return self.cliques[i]

    @property
    def max_size(self) -> int:
        return max((len(c) for c in self.cliques), default=0)

    def label_sets(self) -> list[tuple[tuple[int, ...], ...]]:
        labels = self.source.labels
        if labels is None:
            raise ValueError("source graph carries no labels")
        return [tuple(labels[v] for v in c) for c in self.cliques]


def _local_cliques(v: int, g: FiniteGraph) -> list[Clique]:
    """Maximal cliques whose smallest member is ``v``.

    Pivoting Bron-Kerbosch restricted to the neighbourhood of ``v``, with
    the neighbourhood packed into int bitsets.
    """
    nbhd = sorted(g.adjacency[v])
    bit = {u: i for i, u in enumerate(nbhd)}
    masks = []
    for u in nbhd:
        m = 0
        for w in g.adjacency[u]:
            i = bit.get(w)
            if i is not None:
                m |= 1 << i
        masks.append(m)
    P = 0
    X = 0
    for i, u in enumerate(nbhd):
        if u > v:
            P |= 1 << i
        else:
            X |= 1 << i

    found: list[Clique] = []

    def expand(R: list[int], P: int, X: int) -> None:
        if not P:
            if not X:
                found.append(tuple(sorted(R)))
            return
        # pivot maximising |P & N(u)|
        best = -1
        pivot_mask = 0
        PX = P | X
        while PX:
            low = PX & -PX
            i = low.bit_length() - 1
            cnt = (P & masks[i]).bit_count()
            if cnt > best:
                best = cnt
                pivot_mask = masks[i]
            PX ^= low
        todo = P & ~pivot_mask
        while todo:
            low = todo & -todo
            i = low.bit_length() - 1
            R.append(nbhd[i])
            expand(R, P & masks[i], X & masks[i])
            R.pop()
            P ^= low
            X |= low
            todo ^= low

    expand([v], P, X)
    return found


def maximal_cliques(g: FiniteGraph) -> CliqueList:
    found: list[Clique] = []
    for v in range(g.vertex_count):
        found.extend(_local_cliques(v, g))
    return CliqueList(g, tuple(sorted(found)))


def is_maximal_clique(g: FiniteGraph, members) -> bool:
    members = list(members)
    if not members:
        return False
    for u, w in combinations(members, 2):
        if w not in g.adjacency[u]:
            return False
    common = set(g.adjacency[members[0]])
    for u in members[1:]:
        common &= g.adjacency[u]
    return not common


def clique_graph(g: FiniteGraph, cliques: CliqueList | None = None) -> tuple[FiniteGraph, CliqueList]:
    """The intersection graph of the maximal cliques of ``g``.

    Vertex ``i`` of the result is ``cliques[i]``; the result is unlabelled.
    """
    if cliques is None:
        cliques = maximal_cliques(g)
    containing: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, c in enumerate(cliques):
        for v in c:
            containing[v].append(i)
    adj: list[set[int]] = [set() for _ in range(len(cliques))]
    for group in containing:
        for i in group:
            adj[i].update(group)
    for i, a in enumerate(adj):
        a.discard(i)
    meta = {"construction": "clique_graph", "source_vertices": g.vertex_count}
    return FiniteGraph(len(cliques), tuple(frozenset(a) for a in adj), None, meta), cliques


@dataclass
class StepRecord:
    step: int
    vertex_count: int
    edge_count: int
    max_degree: int
    max_clique_size: int
    elapsed: float = 0.0


@dataclass
class IterationReport:
    records: list[StepRecord] = field(default_factory=list)
    # clique list of every graph in the run; not serialised
    clique_lists: list[CliqueList] = field(default_factory=list, repr=False)

    def to_jsonl(self, timings: bool = False) -> str:
        lines = []
        for r in self.records:
            row = asdict(r)
            if not timings:
                del row["elapsed"]
            lines.append(json.dumps(row, sort_keys=False))
        return "\n".join(lines) + "\n"

    def to_table(self, timings: bool = False) -> str:
        head = ["step", "vertices", "edges", "max_deg", "max_clique"]
        rows = [[r.step, r.vertex_count, r.edge_count, r.max_degree, r.max_clique_size] for r in self.records]
        if timings:
            head.append("seconds")
            for row, r in zip(rows, self.records):
                row.append(f"{r.elapsed:.3f}")
        cells = [head] + [[str(x) for x in row] for row in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(head))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"


def iterate(g: FiniteGraph, steps: int, cap: int = DEFAULT_ITERATE_CAP) -> tuple[list[FiniteGraph], IterationReport]:
    """Compute ``k^0 g, ..., k^steps g``.

    The report keeps the clique list of every graph produced, so callers
    can follow the clique-to-vertex correspondence between steps.  Raises
    :class:`SizeGuardError` once a graph would exceed ``cap`` vertices.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if g.vertex_count > cap:
        raise SizeGuardError(f"input has {g.vertex_count} vertices, cap is {cap}")
    graphs = [g]
    report = IterationReport()
    t0 = time.perf_counter()
    current = g
    for m in range(steps + 1):
        cl = maximal_cliques(current)
        report.clique_lists.append(cl)
        report.records.append(
            StepRecord(m, current.vertex_count, current.edge_count, current.max_degree, cl.max_size,
                       time.perf_counter() - t0)
        )
        if m == steps:
            break
        if len(cl) > cap:
            raise SizeGuardError(f"k^{m + 1} would have {len(cl)} vertices, cap is {cap}")
        t0 = time.perf_counter()
        current, _ = clique_graph(current, cl)
        graphs.append(current)
    return graphs, report
