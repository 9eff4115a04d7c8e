"""r-homotopy invariants of finite quasimetric spaces and digraphs."""

__version__ = "0.1.0"

from .complex import enumerate_tuples, inclusion_matrix, prism_homotopy, truncated_complex
from .digraph import Digraph, digraph_retract_from_points, is_convex_subdigraph, shortest_path_space
from .homology import HomologyGroup, homology, induced_image_rank, smith_normal_form
from .intervals import Interval, closed, full, left_closed_ray, parse_interval, precedes, singleton
from .linalg import QQ, ZZ, Coefficients, Fp
from .lowdim import adjacent_pairs, sh0_classes, sh1_adjacency, thick_interval_hits, trivial_pairs
from .minimal_model import (
    find_contracting_endo,
    idempotent_power,
    is_isometric,
    jumping_points,
    minimal_model,
    nested_models,
    stable_model,
)
from .space import (
    INF,
    HomotopyChain,
    QMetSpace,
    ShortMap,
    compose,
    identity,
    map_distance,
    points_r_homotopic,
    validate_space,
    verify_homotopy_chain,
)
from .spectral import (
    SHModule,
    magnitude_homology,
    mpss_page,
    mpss_page_ce,
    persistent_sh,
    reachability_homology,
    sb,
    sh,
    sh_induced,
    sz,
    verify_decomposition,
)
