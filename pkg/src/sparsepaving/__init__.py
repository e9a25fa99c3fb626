"""Sparse paving matroids: the M_k family, its duals, the Vamos matroid,
lattices of flats and pseudomodularity checks."""

from .analysis import (
    MinorWitness,
    PrismTriple,
    SearchReport,
    find_minor,
    find_restriction_isomorphic,
    find_vamos,
    prism_triples,
    series_shortcut_sites,
    triangle_free_search,
)
from .constructions import (
    PrismRelaxation,
    SimpleGraph,
    build_mk,
    build_tictactoe,
    build_vamos,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_prism,
    parse_graph,
    path_graph,
    random_sparse_paving,
)
from .core import (
    SparsePavingMatroid,
    contract,
    delete,
    dualize,
    is_in_series,
    is_isomorphic,
    minor,
    relax,
    restrict,
    validate,
)
from .elementset import ElementSet
from .lattice import (
    Flat,
    GeometricLattice,
    PmReport,
    PmWitness,
    ch_coline_incidence,
    colines,
    enumerate_flats,
    is_pseudomodular_naive,
    is_pseudomodular_pruned,
)

__version__ = "0.1.0"
