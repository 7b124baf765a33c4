"""Free graded-commutative algebras, presentations and their quotients.

Monomials are exponent tuples aligned with the generator list of a
:class:`FreeAlgebra`.  Generators are ordered by declaration, and monomials of
a fixed degree are listed in descending lexicographic order of their exponent
tuples (``x^2, x*y, y^2``).  Quotients are computed degree by degree: the
relation multiples of degree ``d`` are row reduced and the monomials that
never become pivots form the basis of the quotient in degree ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DegreeOverflow, MalformedPresentation
from .exact.linalg import rank, rref

Monomial = tuple  # exponent per generator


class Generator(NamedTuple):
    name: str
    degree: int


class FreeAlgebra:
    """Polynomial algebra on the even generators tensor exterior algebra on the odd ones."""

    def __init__(self, generators: Iterable):
        gens = tuple(Generator(*g) for g in generators)
        seen = set()
        for g in gens:
            if g.degree < 1:
                raise MalformedPresentation(f"generator {g.name} has degree {g.degree} < 1")
            if g.name in seen:
                raise MalformedPresentation(f"duplicate generator {g.name}")
            seen.add(g.name)
        self.generators = gens
        self.names = tuple(g.name for g in gens)
        self.degrees = tuple(g.degree for g in gens)
        self.odd = tuple(d % 2 == 1 for d in self.degrees)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._monomials: dict[int, tuple] = {}

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "FreeAlgebra(" + ", ".join(f"{n}:{d}" for n, d in self.generators) + ")"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def generator_monomial(self, i: int) -> Monomial:
        m = [0] * self.ngens
        m[i] = 1
        return tuple(m)

    def monomials(self, degree: int) -> tuple:
        """All monomials of the given degree, descending lexicographic."""
        if degree in self._monomials:
            return self._monomials[degree]
        out: list = []
        n = self.ngens

        def rec(i, remaining, prefix):
            if i == n:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            d = self.degrees[i]
            top = remaining // d
            if self.odd[i]:
                top = min(top, 1)
            for e in range(top, -1, -1):
                prefix.append(e)
                rec(i + 1, remaining - e * d, prefix)
                prefix.pop()

        if degree >= 0:
            rec(0, degree, [])
        result = tuple(out)
        self._monomials[degree] = result
        return result

    def monomial_product(self, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
        """Koszul sign and canonical product of two monomials.

        The sign counts the odd generators of ``m2`` that have to move left
        past odd generators of ``m1`` with a larger index.  It is 0 when an
        odd generator would appear twice.
        """
        sign = 1
        odd_in_m1_after = 0
        # walk from the last generator down so we know how many odd factors of
        # m1 sit to the right of each position
        for i in range(self.ngens - 1, -1, -1):
            if self.odd[i]:
                if m1[i] and m2[i]:
                    return 0, ()
                if m2[i] and odd_in_m1_after % 2:
                    sign = -sign
                if m1[i]:
                    odd_in_m1_after += 1
        return sign, tuple(a + b for a, b in zip(m1, m2))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # ---- element constructors -----------------------------------------------

    def zero(self) -> GradedPoly:
        return GradedPoly(self, {})

    def one(self) -> GradedPoly:
        return GradedPoly(self, {self.unit_monomial(): Fraction(1)})

    def gen(self, key) -> GradedPoly:
        i = self.index[key] if isinstance(key, str) else key
        return GradedPoly(self, {self.generator_monomial(i): Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.ngens))

    def monomial(self, m: Monomial, coefficient=1) -> GradedPoly:
        return GradedPoly(self, {tuple(m): Fraction(coefficient)})

    def extend(self, generators: Iterable) -> FreeAlgebra:
        return FreeAlgebra(self.generators + tuple(Generator(*g) for g in generators))


def monomial_product(algebra: FreeAlgebra, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
    return algebra.monomial_product(m1, m2)


class GradedPoly:
    """Linear combination of monomials of a :class:`FreeAlgebra`.

    Coefficients are usually :class:`~fractions.Fraction`; any ring element
    supporting ``+``, ``*`` and truthiness (zero is falsy) also works, which
    is how extended real scalars are handled.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping):
        self.algebra = algebra
        self.terms = {tuple(m): c for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, algebra, terms):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        return obj

    # ---- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {self.algebra.monomial_degree(m) for m in self.terms}

    @property
    def homogeneous_degree(self) -> int | None:
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra
        order = {m: k for d in sorted(self.degrees(), reverse=True) for k, m in enumerate(alg.monomials(d))}
        items = sorted(
            self.terms.items(), key=lambda mc: (-alg.monomial_degree(mc[0]), order.get(mc[0], 0))
        )
        out = ""
        for k, (m, c) in enumerate(items):
            mono = alg.format_monomial(m)
            if isinstance(c, Fraction):
                neg = c < 0
                a = -c if neg else c
                if mono == "1":
                    body = str(a)
                elif a == 1:
                    body = mono
                else:
                    body = f"{a}*{mono}"
            else:
                neg = False
                body = f"({c})" if mono == "1" else f"({c})*{mono}"
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"GradedPoly({self.to_str()})"

    __str__ = to_str

    # ---- arithmetic -------------------------------------------------------------

    def _check(self, other: GradedPoly):
        if other.algebra != self.algebra:
            raise ValueError("polynomials live in different algebras")

    def __add__(self, other):
        if not isinstance(other, GradedPoly):
            if other == 0:
                return self
            other = self.algebra.one() * other
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedPoly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return GradedPoly(self.algebra, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        alg = self.algebra
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = alg.monomial_product(m1, m2)
                if sign == 0:
                    continue
                v = c1 * c2 if sign > 0 else -(c1 * c2)
                terms[m] = terms[m] + v if m in terms else v
        return GradedPoly(alg, terms)

    def __rmul__(self, other):
        return GradedPoly(self.algebra, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def embed(self, algebra: FreeAlgebra) -> GradedPoly:
        """View the polynomial in an algebra whose generators extend ours."""
        if algebra.generators[: self.algebra.ngens] != self.algebra.generators:
            raise ValueError("target algebra does not extend the source")
        pad = (0,) * (algebra.ngens - self.algebra.ngens)
        return GradedPoly._raw(algebra, {m + pad: c for m, c in self.terms.items()})

    def map_coefficients(self, f) -> GradedPoly:
        return GradedPoly(self.algebra, {m: f(c) for m, c in self.terms.items()})


@dataclass(frozen=True)
class Presentation:
    """Generators with degrees and homogeneous relations: ``Q[gens] / <relations>``."""

    generators: tuple
    relations: tuple = ()
    formal_dimension: int | None = None

    def __post_init__(self):
        gens = tuple(Generator(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        alg = FreeAlgebra(gens)
        rels = []
        min_deg = min(alg.degrees, default=0)
        for r in self.relations:
            if r.algebra != alg:
                raise MalformedPresentation("relation references unknown generators")
            if r.is_zero():
                raise MalformedPresentation("zero relation")
            d = r.homogeneous_degree
            if d is None:
                raise MalformedPresentation(f"inhomogeneous relation {r.to_str()}")
            if d < 2 * min_deg:
                raise MalformedPresentation(
                    f"relation {r.to_str()} has degree {d} < {2 * min_deg}, below the decomposables"
                )
            rels.append(GradedPoly._raw(alg, {m: Fraction(c) for m, c in r.terms.items()}))
        object.__setattr__(self, "relations", tuple(rels))
        if self.formal_dimension is not None and self.formal_dimension < 0:
            raise MalformedPresentation("formal dimension must be nonnegative")

    @cached_property
    def algebra(self) -> FreeAlgebra:
        return FreeAlgebra(self.generators)

    @property
    def default_cap(self) -> int:
        if self.formal_dimension is not None:
            return self.formal_dimension
        top = max((r.homogeneous_degree for r in self.relations), default=0)
        if top == 0:
            top = max(self.algebra.degrees, default=0)
        return 2 * top

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.generators == other.generators
            and self.formal_dimension == other.formal_dimension
            and tuple(r.terms for r in self.relations) == tuple(r.terms for r in other.relations)
        )

    def __hash__(self):
        return hash((self.generators, self.formal_dimension, tuple(self.relations)))

    @classmethod
    def from_strings(cls, generators: Sequence, relations: Sequence[str] = (), formal_dimension=None):
        """Convenience constructor parsing relation strings with the file grammar."""
        from .presentation_io import parse_polynomial

        alg = FreeAlgebra(generators)
        rels = tuple(parse_polynomial(text, alg) for text in relations)
        return cls(alg.generators, rels, formal_dimension)


class QuotientAlgebra:
    """Degreewise basis and reduction maps of a presented algebra up to ``cap``."""

    def __init__(self, presentation: Presentation, cap: int):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.presentation = presentation
        self.algebra = presentation.algebra
        self.cap = cap
        self.basis: list[tuple] = []
        self._reduction: list[dict] = []
        self._position: list[dict] = []
        for d in range(cap + 1):
            self._build_degree(d)

    def _build_degree(self, d: int):
        alg = self.algebra
        monos = alg.monomials(d)
        pos = {m: i for i, m in enumerate(monos)}
        rows = []
        for r in self.presentation.relations:
            e = r.homogeneous_degree
            if e > d:
                continue
            for m in alg.monomials(d - e):
                prod = alg.monomial(m) * r
                if prod:
                    row = [Fraction(0)] * len(monos)
                    for mm, c in prod.terms.items():
                        row[pos[mm]] += c
                    rows.append(row)
        if rows:
            reduced, pivots = rref(rows, len(monos))
        else:
            reduced, pivots = [], []
        pivot_set = set(pivots)
        basis = tuple(m for i, m in enumerate(monos) if i not in pivot_set)
        bpos = {m: k for k, m in enumerate(basis)}
        reduction: dict = {m: {k: Fraction(1)} for m, k in bpos.items()}
        for row, p in zip(reduced, pivots):
            image = {}
            for j, c in enumerate(row):
                if j != p and c:
                    image[bpos[monos[j]]] = -c
            reduction[monos[p]] = image
        self.basis.append(basis)
        self._reduction.append(reduction)
        self._position.append(bpos)

    def __repr__(self):
        return f"QuotientAlgebra(cap={self.cap}, dims={self.hilbert_coefficients()})"

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def dim(self, degree: int) -> int:
        if degree < 0:
            return 0
        self._require(degree)
        return len(self.basis[degree])

    def _require(self, degree: int):
        if degree > self.cap:
            raise DegreeOverflow(f"degree {degree} exceeds the cap {self.cap}")

    def hilbert_coefficients(self) -> list[int]:
        return self.dims

    def extended(self, cap: int) -> QuotientAlgebra:
        if cap <= self.cap:
            return self
        return QuotientAlgebra(self.presentation, cap)

    def basis_element(self, degree: int, k: int) -> GradedPoly:
        return self.algebra.monomial(self.basis[degree][k])

    def basis_polys(self, degree: int) -> list[GradedPoly]:
        self._require(degree)
        return [self.algebra.monomial(m) for m in self.basis[degree]]

    def coordinates(self, poly: GradedPoly, degree: int | None = None) -> list:
        """Coordinates of the degree-``degree`` part of ``poly`` in the quotient basis."""
        if degree is None:
            degree = poly.homogeneous_degree
            if degree is None:
                if poly.is_zero():
                    raise ValueError("degree required for the zero polynomial")
                raise ValueError("coordinates of an inhomogeneous polynomial need a degree")
        self._require(degree)
        alg = self.algebra
        red = self._reduction[degree]
        out: list = [Fraction(0)] * len(self.basis[degree])
        for m, c in poly.terms.items():
            if alg.monomial_degree(m) != degree:
                continue
            for k, v in red[m].items():
                out[k] = out[k] + c * v
        return out

    def element(self, degree: int, coords: Sequence) -> GradedPoly:
        basis = self.basis[degree]
        return GradedPoly(self.algebra, {m: c for m, c in zip(basis, coords)})

    def reduce(self, poly: GradedPoly) -> GradedPoly:
        """Normal form of ``poly`` in the quotient basis."""
        if poly.algebra != self.algebra:
            raise ValueError("polynomial is not over this algebra")
        out: dict = {}
        for d in sorted(poly.degrees()):
            coords = self.coordinates(poly, d)
            for m, c in zip(self.basis[d], coords):
                if c:
                    out[m] = c
        return GradedPoly(self.algebra, out)

    def is_zero(self, poly: GradedPoly) -> bool:
        """Exact zero test; extended scalars are tested through their real value."""
        for c in self.reduce(poly).terms.values():
            if hasattr(c, "is_zero"):
                if not c.is_zero():
                    return False
            elif c != 0:
                return False
        return True

    def multiply(self, a: GradedPoly, b: GradedPoly) -> GradedPoly:
        top = max(a.degree, 0) + max(b.degree, 0)
        if top > self.cap:
            raise DegreeOverflow(f"product degree {top} exceeds the cap {self.cap}")
        return self.reduce(a * b)

    def relation_space(self, degree: int) -> int:
        """Dimension of the ideal in the given degree."""
        return len(self.algebra.monomials(degree)) - self.dim(degree)


def build_quotient(presentation: Presentation, cap: int | None = None) -> QuotientAlgebra:
    if cap is None:
        cap = presentation.default_cap
    return QuotientAlgebra(presentation, cap)


def multiply(q: QuotientAlgebra, a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return q.multiply(a, b)


def hilbert_coefficients(q: QuotientAlgebra) -> list[int]:
    return q.hilbert_coefficients()


def pairing_matrix(q: QuotientAlgebra, k: int, n: int) -> list[list[Fraction]]:
    """Matrix of ``H^k x H^(n-k) -> H^n`` against the first top basis vector."""
    top = q.basis_polys(n)
    rows = []
    for a in q.basis_polys(k):
        row = []
        for b in q.basis_polys(n - k):
            coords = q.coordinates(q.reduce(a * b), n)
            row.append(coords[0] if top else Fraction(0))
        rows.append(row)
    return rows


def poincare_pairing_check(q: QuotientAlgebra, n: int) -> bool:
    """True iff ``H^n`` is a line and every pairing ``H^k x H^(n-k) -> H^n`` is perfect."""
    if q.cap < n:
        raise DegreeOverflow(f"cap {q.cap} is below the formal dimension {n}")
    if q.dim(n) != 1:
        return False
    for k in range(n + 1):
        dk, dnk = q.dim(k), q.dim(n - k)
        if dk != dnk:
            return False
        if dk == 0:
            continue
        if rank(pairing_matrix(q, k, n), dnk) != dk:
            return False
    return True


def betti_numbers(q: QuotientAlgebra, top: int | None = None) -> list[int]:
    top = q.cap if top is None else top
    return [q.dim(d) for d in range(top + 1)]
