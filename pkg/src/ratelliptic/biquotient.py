"""Free torus actions on (S^3)^3: freeness test, cohomology of the lower-triangular
family and its geometric-formality obstruction."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import ReductionMismatch
from .exact.linalg import determinant, solve_in_span
from .graded import Generator, GradedPoly, Presentation, QuotientAlgebra, build_quotient

PRINCIPAL_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class ActionMatrix:
    """Exponent matrix ``(a1 a2 a3 / b1 b2 b3 / c1 c2 c3)`` of a T^3 action."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("an action matrix is 3x3")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_flat(cls, values: Sequence[int]) -> ActionMatrix:
        if len(values) != 9:
            raise ValueError("expected nine integers a1,a2,a3,b1,b2,b3,c1,c2,c3")
        return cls((tuple(values[0:3]), tuple(values[3:6]), tuple(values[6:9])))

    def minor(self, i: int, j: int) -> int:
        e = self.entries
        return e[i][i] * e[j][j] - e[i][j] * e[j][i]


@dataclass(frozen=True)
class FreenessReport:
    diagonal_ok: bool
    minor_values: tuple
    det_value: int
    free: bool


def freeness_check(m: ActionMatrix) -> FreenessReport:
    """Diagonal entries, principal 2x2 minors and the determinant must all be +-1."""
    diagonal_ok = all(abs(m.entries[i][i]) == 1 for i in range(3))
    minors = tuple(m.minor(i, j) for i, j in PRINCIPAL_PAIRS)
    det = int(determinant([[Fraction(v) for v in row] for row in m.entries]))
    free = diagonal_ok and all(abs(v) == 1 for v in minors) and abs(det) == 1
    return FreenessReport(diagonal_ok, minors, det, free)


def family1_matrix(c1: int, c2: int) -> ActionMatrix:
    return ActionMatrix(((1, 2, 0), (1, 1, 0), (c1, c2, 1)))


def family2_matrix(a3: int, b3: int) -> ActionMatrix:
    return ActionMatrix(((1, 2, a3), (1, 1, b3), (0, 0, 1)))


def family3_matrix(b1: int, c1: int, c2: int) -> ActionMatrix:
    return ActionMatrix(((1, 0, 0), (b1, 1, 0), (c1, c2, 1)))


@dataclass(frozen=True)
class Family3Ring:
    b1: int
    c1: int
    c2: int
    presentation: Presentation

    def quotient(self) -> QuotientAlgebra:
        return build_quotient(self.presentation, 6)


def family3_ring(b1: int, c1: int, c2: int) -> Family3Ring:
    """``Q[x1,x2,x3]/(x1^2, x2^2 + b1 x1 x2, x3^2 + c1 x1 x3 + c2 x2 x3)``, formal dimension 6."""
    gens = (Generator("x1", 2), Generator("x2", 2), Generator("x3", 2))
    p0 = Presentation(gens)
    x1, x2, x3 = p0.algebra.gens()
    relations = (x1 * x1, x2 * x2 + x1 * x2 * b1, x3 * x3 + x1 * x3 * c1 + x2 * x3 * c2)
    return Family3Ring(b1, c1, c2, Presentation(gens, relations, 6))


class ObstructionVerdict(str, Enum):
    Obstructed = "Obstructed"
    Inconclusive = "Inconclusive"


@dataclass(frozen=True)
class ObstructionReport:
    omega2_tilde: GradedPoly
    omega3_tilde: GradedPoly
    p: Fraction
    q: Fraction
    coefficient: Fraction
    top_class_nonzero: bool
    verdict: ObstructionVerdict


def obstruction_coefficient(b1, c1, c2) -> Fraction:
    """Closed form ``-(c2/2)(b1 c2/2 - c1)``."""
    b1, c1, c2 = Fraction(b1), Fraction(c1), Fraction(c2)
    return -(c2 / 2) * (b1 * c2 / 2 - c1)


def formality_obstruction(r: Family3Ring, quotient: QuotientAlgebra | None = None) -> ObstructionReport:
    """Change of variables making the first two squares vanish and the third a multiple of ``w1 w2~``.

    ``w2~ = w2 + (b1/2) w1`` squares to zero.  Writing the reduced ``w3^2``
    as ``alpha w1 w3 + beta w2~ w3 + gamma w1 w2~`` (solved exactly),
    ``w3~ = w3 + p w1 + q w2~`` with ``p = -alpha/2`` and ``q = -beta/2``
    kills both cross terms and leaves ``w3~^2 = (gamma + 2pq) w1 w2~``.
    The result is checked against the closed form and by reduction.
    """
    ring = quotient if quotient is not None else r.quotient()
    w1, w2, w3 = ring.algebra.gens()
    w2t = w2 + w1 * Fraction(r.b1, 2)
    if not ring.is_zero(w2t * w2t):
        raise ReductionMismatch("w2~^2 does not reduce to zero")

    frame = [ring.coordinates(e, 4) for e in (w1 * w3, w2t * w3, w1 * w2t)]
    solved = solve_in_span(frame, ring.coordinates(w3 * w3, 4))
    if solved is None:
        raise ReductionMismatch("w1 w3, w2~ w3, w1 w2~ do not span H^4")
    alpha, beta, gamma = solved
    p, q = -alpha / 2, -beta / 2
    coefficient = gamma + 2 * p * q
    if coefficient != obstruction_coefficient(r.b1, r.c1, r.c2):
        raise ReductionMismatch(f"solved coefficient {coefficient} disagrees with the closed form")
    if q != Fraction(r.c2, 2) or p != -(Fraction(r.b1 * r.c2, 2) - r.c1) / 2:
        raise ReductionMismatch("solved change of variables disagrees with the closed form")

    w3t = w3 + w1 * p + w2t * q
    if not ring.is_zero(w3t * w3t - w1 * w2t * coefficient):
        raise ReductionMismatch("w3~^2 - coefficient * w1 w2~ does not reduce to zero")
    top_nonzero = not ring.is_zero(w1 * w2t * w3t)
    obstructed = coefficient != 0 and top_nonzero
    verdict = ObstructionVerdict.Obstructed if obstructed else ObstructionVerdict.Inconclusive
    return ObstructionReport(w2t, w3t, p, q, coefficient, top_nonzero, verdict)
