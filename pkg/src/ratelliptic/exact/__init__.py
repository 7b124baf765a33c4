"""Exact arithmetic substrate: rationals, linear algebra, real algebraic numbers."""

from fractions import Fraction

from .algebraic import AlgebraicReal, real_roots
from .fields import RealTower, TowerElement
from .linalg import (
    QMatrix,
    determinant,
    extend_to_basis,
    image_basis,
    image_complement,
    kernel_basis,
    rank,
    rref,
    solve_in_span,
)
from .poly import (
    UniPoly,
    count_roots,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    sturm_isolate,
    sturm_sequence,
)

Rational = Fraction


def refine(r: AlgebraicReal, width) -> AlgebraicReal:
    return r.refine(width)


__all__ = [
    "AlgebraicReal",
    "Fraction",
    "QMatrix",
    "Rational",
    "RealTower",
    "TowerElement",
    "UniPoly",
    "count_roots",
    "determinant",
    "extend_to_basis",
    "image_basis",
    "image_complement",
    "kernel_basis",
    "poly_gcd",
    "rank",
    "rational_roots",
    "real_roots",
    "refine",
    "resultant",
    "rref",
    "solve_in_span",
    "squarefree_part",
    "sturm_isolate",
    "sturm_sequence",
]
