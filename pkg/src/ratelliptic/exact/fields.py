"""Real scalar extensions Q(r_1, ..., r_k) built as towers of adjoined roots.

Each adjoined ``r_i`` is an :class:`AlgebraicReal` with a rational defining
polynomial, so an element is a polynomial in the ``r_i`` reduced modulo
every defining polynomial.  The defining polynomials need not be
irreducible; the ring is then a product of fields and we only ever care
about the real embedding picked out by the isolating intervals.  Zero and
sign tests go through the annihilating polynomial of the element and are
exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebraic import AlgebraicReal, Interval, _overlaps, iv_add, iv_mul, iv_pow, real_roots
from .linalg import kernel_basis, QMatrix
from .poly import UniPoly


class RealTower:
    """The real field generated over Q by a sequence of algebraic reals."""

    def __init__(self, roots: Sequence[AlgebraicReal] = (), names: Sequence[str] | None = None):
        self.roots = tuple(roots)
        self.names = tuple(names) if names is not None else tuple(f"r{i + 1}" for i in range(len(roots)))
        if len(self.names) != len(self.roots):
            raise ValueError("one name per adjoined root")
        self.degrees = tuple(r.minimal_poly.degree for r in self.roots)
        self._basis = tuple(product(*(range(d) for d in self.degrees)))
        self._index = {e: i for i, e in enumerate(self._basis)}
        # r_i^k for k < 2*deg_i as coefficient vectors in 1, r_i, ..., r_i^(deg_i - 1)
        self._power_tables = tuple(_power_table(r.minimal_poly) for r in self.roots)

    @property
    def dimension(self) -> int:
        return len(self._basis)

    def __repr__(self):
        parts = ", ".join(f"{n}={r!r}" for n, r in zip(self.names, self.roots))
        return f"RealTower({parts})"

    def adjoin(self, root: AlgebraicReal, name: str | None = None) -> RealTower:
        return RealTower(self.roots + (root,), self.names + (name or f"r{len(self.roots) + 1}",))

    def __call__(self, value) -> TowerElement:
        if isinstance(value, TowerElement):
            if value.field is not self:
                return self.embed(value)
            return value
        return TowerElement(self, {(0,) * len(self.roots): Fraction(value)})

    def gen(self, i: int) -> TowerElement:
        e = [0] * len(self.roots)
        e[i] = 1
        return TowerElement(self, {tuple(e): Fraction(1)})

    def embed(self, elem: TowerElement) -> TowerElement:
        """Carry an element of a sub-tower (a prefix of our roots) into this tower."""
        k = len(elem.field.roots)
        if k > len(self.roots) or any(a is not b for a, b in zip(self.roots, elem.field.roots)):
            raise ValueError("element does not come from a prefix of this tower")
        pad = (0,) * (len(self.roots) - k)
        return TowerElement(self, {e + pad: c for e, c in elem.terms.items()})

    def _reduce(self, exps: tuple) -> dict:
        """Reduce a monomial in the r_i to basis coordinates."""
        out = {(): Fraction(1)}
        for i, e in enumerate(exps):
            table = self._power_tables[i]
            vec = table(e)
            nxt = {}
            for prefix, c in out.items():
                for j, v in enumerate(vec):
                    if v:
                        key = prefix + (j,)
                        nxt[key] = nxt.get(key, Fraction(0)) + c * v
            out = nxt
        return out

    def enclosure(self, elem: TowerElement, roots: Sequence[AlgebraicReal]) -> Interval:
        box = (Fraction(0), Fraction(0))
        for exps, c in elem.terms.items():
            term = (c, c)
            for r, e in zip(roots, exps):
                if e:
                    term = iv_mul(term, iv_pow(r.interval, e))
            box = iv_add(box, term)
        return box


class _PowerTable:
    def __init__(self, poly: UniPoly):
        self.poly = poly.monic()
        self.deg = self.poly.degree
        self.cache: dict[int, tuple] = {}

    def __call__(self, e: int) -> tuple:
        if e in self.cache:
            return self.cache[e]
        rem = (UniPoly.x() ** e) % self.poly
        vec = tuple(rem.coeffs) + (Fraction(0),) * (self.deg - len(rem.coeffs))
        self.cache[e] = vec
        return vec


def _power_table(poly: UniPoly) -> _PowerTable:
    return _PowerTable(poly)


class TowerElement:
    """Element of a :class:`RealTower`."""

    __slots__ = ("field", "terms")

    def __init__(self, field: RealTower, terms: dict):
        self.field = field
        reduced: dict = {}
        for exps, c in terms.items():
            if c == 0:
                continue
            if all(e < d for e, d in zip(exps, field.degrees)):
                reduced[exps] = reduced.get(exps, Fraction(0)) + c
            else:
                for key, v in field._reduce(exps).items():
                    reduced[key] = reduced.get(key, Fraction(0)) + c * v
        self.terms = {k: v for k, v in reduced.items() if v != 0}

    def _coerce(self, other) -> TowerElement | None:
        if isinstance(other, TowerElement):
            if other.field is self.field:
                return other
            return self.field.embed(other)
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return TowerElement(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                key = tuple(i + j for i, j in zip(a, b))
                terms[key] = terms.get(key, Fraction(0)) + x * y
        return TowerElement(self.field, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.field(1)
        for _ in range(n):
            out = out * self
        return out

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        # structural: a nonzero representative may still have real value 0
        return bool(self.terms)

    def rational_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.field.roots)
        if set(self.terms) == {zero}:
            return self.terms[zero]
        return None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.field.names, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def coordinates(self) -> tuple:
        vec = [Fraction(0)] * self.field.dimension
        for k, v in self.terms.items():
            vec[self.field._index[k]] = v
        return tuple(vec)

    def annihilating_polynomial(self) -> UniPoly:
        """Least-degree monic polynomial over Q vanishing on this element."""
        powers = [self.field(1).coordinates()]
        cur = self.field(1)
        dim = self.field.dimension
        for k in range(1, dim + 1):
            cur = cur * self
            powers.append(cur.coordinates())
            cols = QMatrix.from_columns(powers, nrows=dim)
            ker = kernel_basis(cols)
            if ker:
                v = ker[0]
                return UniPoly(v).monic()
        raise ArithmeticError("no annihilating polynomial found")  # pragma: no cover

    def to_algebraic(self) -> AlgebraicReal:
        """The real value of the element under the tower's embedding."""
        q = self.rational_value()
        if q is not None:
            return AlgebraicReal.from_rational(q)
        candidates = real_roots(self.annihilating_polynomial())
        roots = list(self.field.roots)
        while True:
            box = self.field.enclosure(self, roots)
            hits = [i for i, c in enumerate(candidates) if _overlaps(box, c.interval)]
            if len(hits) == 1:
                return candidates[hits[0]]
            if not hits:
                raise ArithmeticError("enclosure lost every candidate root")
            roots = [r._halve() for r in roots]
            for i in hits:
                candidates[i] = candidates[i]._halve()

    def sign(self) -> int:
        return self.to_algebraic().sign()

    def is_zero(self) -> bool:
        """Exact test that the real value is zero."""
        if not self.terms:
            return True
        return self.sign() == 0
