"""Exact construction and certification of two-distance tight frames."""

__version__ = "0.1.0"

from .constructions import (
    ComplementResult,
    UnnormalizedGram,
    bibd_sum_gram,
    complement_transform,
    equiangular_lift,
    equiangular_translate,
    etf_neighbor_subset,
    etf_projection,
    lift,
    lift_to_angle,
    lift_to_constant,
    naimark,
    project_to_balanced,
    translate,
    translation_roots,
)
from .designs import (
    BlockDesign,
    LinesBoundsTable,
    NonexistenceCertificate,
    QSDParams,
    SRGParams,
    design_nonexistence,
    detect_intersection_numbers,
    equiangular_pipeline,
    fano_plane,
    lines_bound,
    neighbor_substructure,
    octad_design_22,
    pairs_design,
    qsd_necessary_conditions,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    srg_params,
    validate_design,
)
from .gram import (
    Certificate,
    Check,
    TwoDistanceProfile,
    analyze,
    multiplicity_from_angles,
    psd_rank,
    solve_angle_systems,
)
from .matrix import GramMatrix, SymmetricMatrix
from .realize import (
    VectorFrame,
    conference_etf_gram,
    frame_operator_check,
    paper_fixtures,
    realize,
    simplex_gram,
    simplex_vectors,
)
from .scalar import QuadScalar, as_scalar, qs_arith, qs_format, qs_parse, qs_sign, qs_sqrt
