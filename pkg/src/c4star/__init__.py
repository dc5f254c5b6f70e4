"""Exact search and extremal constructions for (C4, K_{1,k})-co-critical graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    Graph,
    common_neighbors,
    contains_c4,
    is_c4_saturated,
    max_star,
    non_edges,
)
from .canon import are_isomorphic, automorphism_count, canonical_form  # noqa: E402
from .formats import decode_graph6, encode_graph6  # noqa: E402
from .coloring import (  # noqa: E402
    EdgeColoring,
    SolverConfig,
    Status,
    arrows,
    enumerate_critical_colorings,
    find_critical_coloring,
    find_red_maximal_coloring,
    is_critical,
    precheck_filters,
)
from .cocritical import (  # noqa: E402
    check_lemma_structures,
    is_cocritical,
    lower_bound_general,
    lower_bound_k2,
    ramsey_upper,
    verify_cocritical,
)
from .constructions import (  # noqa: E402
    build_g,
    build_g_k2,
    build_regular_factorized,
    certificate_coloring,
    certificate_coloring_k2,
    predicted_edge_count,
)
from .atlas import enumerate_graphs, min_c4_saturated, min_cocritical  # noqa: E402
