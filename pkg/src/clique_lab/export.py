"""JSON and DOT serialisation of graphs.

Both writers are deterministic: edges are emitted sorted and dictionaries
are written in a fixed key order, so identical graphs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .graph import FiniteGraph
from .lattice import kind_of


def graph_document(g: FiniteGraph) -> dict:
    if g.labels:
        d = len(g.labels[0])
        kind = kind_of(g.labels[0])
        labels = [list(p) for p in g.labels]
    else:
        d, kind, labels = None, "abstract", []
    return {
        "meta": {**g.meta, "vertex_count": g.vertex_count},
        "d": d,
        "kind": kind,
        "labels": labels,
        "edges": [[u, v] for u, v in g.edges()],
    }


def to_json(g: FiniteGraph) -> str:
    return json.dumps(graph_document(g)) + "\n"


def from_json(text: str) -> FiniteGraph:
    doc = json.loads(text)
    labels = [tuple(p) for p in doc["labels"]] or None
    meta = dict(doc["meta"])
    n = meta.pop("vertex_count")
    return FiniteGraph.from_edges(n, [tuple(e) for e in doc["edges"]], labels, meta)


def _fmt(p) -> str:
    return "(" + ",".join(str(Fraction(c, 2)) for c in p) + ")"


def _position(p) -> tuple[float, float]:
    # hexagonal projection for d=3, identity otherwise
    if len(p) == 1:
        return p[0] / 2, 0.0
    if len(p) == 2:
        return p[0] / 2, p[1] / 2
    x, _, z = p[:3]
    return (x + z / 2) / 2, -(z * 3 ** 0.5 / 2) / 2


def to_dot(g: FiniteGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=8];"]
    for v in range(g.vertex_count):
        if g.labels is not None:
            p = g.labels[v]
            text = _fmt(p)
            x, y = _position(p)
            lines.append(f'  {v} [label="{text}", tooltip="{text}", pos="{x:.4f},{y:.4f}!"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
