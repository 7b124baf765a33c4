"""Exact linear algebra over the rationals.

Elimination always pivots on the leftmost nonzero column and, within that
column, the topmost remaining row.  No pivoting heuristics are used, so bases
returned by :func:`kernel_basis` and :func:`image_complement` are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> QMatrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> QMatrix:
        return cls.from_rows(
            [[col[i] for col in columns] for i in range(nrows)], ncols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> QMatrix:
        return QMatrix.from_rows([self.column(j) for j in range(self.cols)], ncols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.cols)]
            return QMatrix.from_rows(
                [[_dot(self.row(i), c) for c in cols] for i in range(self.rows)],
                ncols=other.cols,
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(_dot(self.row(i), vec) for i in range(self.rows))


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def as_matrix(m, ncols: int | None = None) -> QMatrix:
    if isinstance(m, QMatrix):
        return m
    return QMatrix.from_rows(m, ncols=ncols)


def rref(m, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = as_matrix(m, ncols)
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return rows[:r], pivots


def rank(m, ncols: int | None = None) -> int:
    return len(rref(m, ncols)[1])


def determinant(m) -> Fraction:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = m.to_rows()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def kernel_basis(m, ncols: int | None = None) -> list[Vector]:
    """Basis of the null space ``{v : m v = 0}``, one vector per free column.

    Each vector is scaled so that its first nonzero coordinate is 1.
    """
    m = as_matrix(m, ncols)
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        lead = next(x for x in v if x != 0)
        basis.append(tuple(x / lead for x in v))
    return basis


def image_basis(m, ncols: int | None = None) -> list[Vector]:
    """Columns of ``m`` reduced to an echelon basis of the column space."""
    m = as_matrix(m, ncols)
    reduced, _ = rref(m.transpose())
    return [tuple(r) for r in reduced]


def image_complement(m, ambient_dim: int) -> list[Vector]:
    """Standard basis vectors completing the column space of ``m`` to ``Q^ambient_dim``.

    The image vectors are eliminated with the fixed pivot rule; every
    coordinate that never becomes a pivot contributes its unit vector.
    """
    if not isinstance(m, QMatrix) and len(m) == 0:
        m = QMatrix.zeros(0, 0)
    m = as_matrix(m)
    if m.rows != ambient_dim:
        raise ValueError(f"matrix has {m.rows} rows, expected {ambient_dim}")
    if m.cols == 0:
        pivots: list[int] = []
    else:
        _, pivots = rref(m.transpose())
    taken = set(pivots)
    out = []
    for j in range(ambient_dim):
        if j not in taken:
            e = [Fraction(0)] * ambient_dim
            e[j] = Fraction(1)
            out.append(tuple(e))
    return out


def extend_to_basis(spanning: Iterable[Sequence], candidates: Iterable[Sequence], dim: int) -> list[Vector]:
    """Greedily pick candidates that are independent modulo ``spanning``."""
    rows = [list(map(Fraction, v)) for v in spanning]
    current = rank(rows, dim) if rows else 0
    chosen = []
    for v in candidates:
        trial = rows + [list(map(Fraction, v))]
        r = rank(trial, dim)
        if r > current:
            rows, current = trial, r
            chosen.append(tuple(Fraction(x) for x in v))
    return chosen


def solve_in_span(basis: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum c_i basis_i == target``, or None."""
    dim = len(target)
    if not basis:
        return () if all(x == 0 for x in target) else None
    aug = QMatrix.from_columns(list(basis) + [target], nrows=dim)
    reduced, pivots = rref(aug)
    n = len(basis)
    if n in pivots:
        return None
    coeffs = [Fraction(0)] * n
    for row, p in zip(reduced, pivots):
        coeffs[p] = row[n]
    return tuple(coeffs)
