"""Exact counts of Eulerian orientations, half graphs and their relatives on graph covers."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    CapExceeded,
    GraphFormatError,
    Multigraph,
    degree_vector,
    is_bipartite,
    is_eulerian,
    parse_graph,
    serialize_graph,
    subgraph_on,
    toroidal_grid,
)
from .counting import (  # noqa: E402
    CountKind,
    brute_force_count,
    convolution_sum,
    count_balanced_factorientations,
    count_eulerian_orientations,
    count_half_graphs,
    count_r_factors,
    count_r_orientations,
)
from .covers import (  # noqa: E402
    bipartite_double_cover,
    build_2lift,
    build_klift,
    disjoint_double,
)
