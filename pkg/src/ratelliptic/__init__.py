"""Rational homotopy computations for low-dimensional elliptic manifolds."""

__version__ = "0.1.0"

from .biquotient import ActionMatrix, family3_ring, formality_obstruction, freeness_check
from .classifier import (
    EllipticProfile,
    Verdict,
    VerdictTag,
    check_elliptic_inequalities,
    classify_dim5,
    classify_dim6,
    cubic_root,
    find_square_zero_class,
    normalize_generators,
)
from .graded import (
    FreeAlgebra,
    Generator,
    GradedPoly,
    Presentation,
    QuotientAlgebra,
    betti_numbers,
    build_quotient,
    hilbert_coefficients,
    poincare_pairing_check,
)
from .minimal_model import DGA, PartialModel, RankTable, borel_model, build_model, init_stage2, next_stage
from .presentation_io import format_presentation, parse_presentation, read_presentation

__all__ = [
    "ActionMatrix",
    "DGA",
    "EllipticProfile",
    "FreeAlgebra",
    "Generator",
    "GradedPoly",
    "PartialModel",
    "Presentation",
    "QuotientAlgebra",
    "RankTable",
    "Verdict",
    "VerdictTag",
    "betti_numbers",
    "borel_model",
    "build_model",
    "build_quotient",
    "check_elliptic_inequalities",
    "classify_dim5",
    "classify_dim6",
    "cubic_root",
    "family3_ring",
    "find_square_zero_class",
    "format_presentation",
    "formality_obstruction",
    "freeness_check",
    "hilbert_coefficients",
    "init_stage2",
    "next_stage",
    "normalize_generators",
    "parse_presentation",
    "poincare_pairing_check",
    "read_presentation",
]
