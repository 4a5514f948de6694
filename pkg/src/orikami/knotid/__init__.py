from .certify import CertificationReport, certify, certify_diagram, reduce_polyline
from .diagram import DiagramError, KnotDiagram, NotAKnotError, diagram_from_planar, diagram_from_polyline, simplify
from .invariants import (
    DiagramSizeError,
    alexander,
    bracket_state_sum,
    determinant,
    goeritz_determinant,
    goeritz_matrix,
    jones,
    kauffman_bracket,
)
from .polynomial import LaurentPolynomial

__all__ = [
    "CertificationReport",
    "DiagramError",
    "DiagramSizeError",
    "KnotDiagram",
    "LaurentPolynomial",
    "NotAKnotError",
    "alexander",
    "bracket_state_sum",
    "certify",
    "certify_diagram",
    "determinant",
    "diagram_from_planar",
    "diagram_from_polyline",
    "goeritz_determinant",
    "goeritz_matrix",
    "jones",
    "kauffman_bracket",
    "reduce_polyline",
    "simplify",
]
