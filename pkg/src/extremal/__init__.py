"""Finite Boolean concept classes: shattering, extremality, cube structure,
sample compression, and generators for the standard example families.
"""

from .core import (
    Concept,
    ConceptClass,
    Cube,
    Domain,
    Edge,
    InputError,
    NoCubeError,
    NotASampleError,
    NotExtremalError,
    ParseError,
    Sample,
    UniquenessViolationError,
    class_from_strings,
    complement,
    flip_column,
    format_class_text,
    graph_distance,
    is_sample_of,
    make_class,
    one_inclusion_edges,
    parse_class_text,
    reduction,
    remove_dims,
    restrict,
)
from .shattering import (
    ExtremalityReport,
    SandwichReport,
    SetFamily,
    down_shift,
    down_shift_closure,
    extremality_report,
    is_downward_closed,
    is_extremal,
    is_maximum,
    sandwich_check,
    sauer_shelah_bound,
    shattered_sets,
    strongly_shattered_sets,
    vc_dimension,
)
from .cubes import (
    CubeExpression,
    all_cubes,
    class_expression,
    cubes_with_dims,
    expression_to_class,
    maximal_cubes,
    maximal_cubes_containing,
    parse_cube_expression,
    print_cube_expression,
)
from .compression import (
    LabeledScheme,
    SchemeVerification,
    candidate_set,
    consistent_set,
    verify_scheme,
)
from .unlabeled import (
    CornerlessHunt,
    NoCornerError,
    PeelingCertificate,
    RepresentationMap,
    clash_witness,
    compress_unlabeled,
    corner_peel,
    degree_assignment,
    degree_map,
    degree_set,
    disagreement_map,
    hunt_cornerless,
    hunt_intermediate,
    is_corner,
    is_non_clashing,
    is_teaching_set,
    reconstruct_unlabeled,
    restrict_representation,
)
from .generators import (
    DualityReport,
    FIG1_TEXT,
    FIG2_EXPRESSION,
    FIG3_CELLS,
    LineArrangement,
    RefGraph,
    builtin,
    builtin_names,
    cells_in_region,
    complement_duality_check,
    count_st_connected_subgraphs,
    downward_closure,
    enumerate_extremal,
    fig3_arrangement,
    full_cube,
    full_plane_region,
    glued_cube_complement,
    hamming_ball,
    parity_class,
    random_class,
    random_extremal_class,
    st_orientation_class,
)

__version__ = "0.1.0"
