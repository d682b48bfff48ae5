"""Iterated clique graphs of layered l-infinity lattice graphs."""

from .cliques import CliqueList, IterationReport, clique_graph, iterate, maximal_cliques
from .graph import (
    FiniteGraph,
    check_isomorphism_map,
    connected_components,
    degree,
    distance,
    find_isomorphism,
    induced_subgraph,
)
from .lattice import (
    Cube,
    LayeredSpec,
    WindowSpec,
    build_window,
    cube_centroid,
    cube_vertices,
    in_layered,
    layer_profile,
    linf_adjacent,
    make_point,
    parse_spec,
)

__version__ = "0.1.0"
