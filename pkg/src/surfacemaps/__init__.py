"""Combinatorial maps on orientable surfaces.

Dart-based rotation systems with face tracing, Euler characteristic and
genus; exact minimum-genus search over constrained rotation systems;
drawings with crossings as planarized maps with crossing-parity predicates;
and surface gluing by vertex splicing.
"""

from .graphs import (
    Graph,
    GridSpec,
    apex_grid,
    build_graph,
    complete_bipartite,
    complete_graph,
    disjoint_union,
    girth,
    grid,
)
from .maps import (
    CombMap,
    FaceSet,
    MergeInstruction,
    SpliceCorrespondence,
    cut_along_cycle,
    euler_characteristic,
    genus,
    is_contractible,
    map_from_darts,
    map_from_rotations,
    mirrored,
    splice_glue,
    trace_faces,
    validate_map,
)
from .drawings import (
    CrossingParityMatrix,
    PlanarizedDrawing,
    crossing_counts,
    embedding_as_drawing,
    is_even,
    is_independently_even,
    is_w_even,
    original_rotation,
    split_holes,
    surface_genus,
    validate_drawing,
)
from .search import (
    GenusCertificate,
    RotationConstraint,
    SearchBudgetExceeded,
    check_faces_divisible,
    check_no_4_faces,
    euler_lower_bound,
    min_genus,
)

__version__ = "0.1.0"
