"""Knots tied by folding a square of paper.

A folding assigns a rigid motion to every face of a crease pattern on the
unit square; a closed loop drawn on the paper then maps to a closed polygon
in space whose knot type is certified by the invariants in ``orikami.knotid``.
"""

from .analysis import (
    IntersectionFinding,
    Kind,
    PropernessVerdict,
    Verdict,
    is_injective,
    properness_verdict,
    self_intersections,
)
from .construct import (
    ConeResult,
    ConstructionError,
    StickDiagram,
    StickDiagramError,
    cone_pipeline,
    construct_from_sticks,
)
from .folding import (
    CreasePattern,
    Folding,
    PaperLoop,
    SpatialPolyline,
    ValidationReport,
    build_pattern,
    crease_edge_count,
    fold_loop,
    validate_folding,
)
from .generators import (
    GenerationError,
    TorusParams,
    improper_fixture,
    improper_restriction,
    simple_fold_sequence,
    single_crease,
    torus_folding,
)
from .geometry import GeometryError, RigidEmbedding, Tolerance, tolerance, use_tolerance
from .hinge import fold_tree
from .knotid import CertificationReport, certify, certify_diagram

__all__ = [
    "CertificationReport",
    "ConeResult",
    "ConstructionError",
    "CreasePattern",
    "Folding",
    "GenerationError",
    "GeometryError",
    "IntersectionFinding",
    "Kind",
    "PaperLoop",
    "PropernessVerdict",
    "RigidEmbedding",
    "SpatialPolyline",
    "StickDiagram",
    "StickDiagramError",
    "Tolerance",
    "TorusParams",
    "ValidationReport",
    "Verdict",
    "build_pattern",
    "certify",
    "certify_diagram",
    "cone_pipeline",
    "construct_from_sticks",
    "crease_edge_count",
    "fold_loop",
    "fold_tree",
    "improper_fixture",
    "improper_restriction",
    "is_injective",
    "properness_verdict",
    "self_intersections",
    "simple_fold_sequence",
    "single_crease",
    "torus_folding",
    "tolerance",
    "use_tolerance",
    "validate_folding",
]
