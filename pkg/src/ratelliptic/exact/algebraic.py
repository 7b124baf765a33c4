"""Real algebraic numbers: a squarefree polynomial plus an isolating interval."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .poly import (
    UniPoly,
    bisect_root,
    count_roots,
    interpolate,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    sturm_isolate,
    sturm_sequence,
)

Interval = tuple  # (lo, hi) of Fraction


def iv_add(a: Interval, b: Interval) -> Interval:
    return a[0] + b[0], a[1] + b[1]


def iv_mul(a: Interval, b: Interval) -> Interval:
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


def iv_pow(a: Interval, n: int) -> Interval:
    out = (Fraction(1), Fraction(1))
    for _ in range(n):
        out = iv_mul(out, a)
    return out


def iv_poly(p: UniPoly, x: Interval) -> Interval:
    acc = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = iv_add(iv_mul(acc, x), (c, c))
    return acc


def _overlaps(a: Interval, b: Interval) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


class AlgebraicReal:
    """A real root of ``minimal_poly`` singled out by ``[lo, hi]``.

    ``minimal_poly`` is squarefree and monic (not necessarily irreducible).
    Either ``lo < hi`` with neither endpoint a root and exactly one root
    inside, or ``lo == hi`` is the root itself.
    """

    __slots__ = ("minimal_poly", "lo", "hi")

    def __init__(self, minimal_poly: UniPoly, lo, hi, *, check: bool = True):
        lo, hi = Fraction(lo), Fraction(hi)
        poly = squarefree_part(minimal_poly) if check else minimal_poly
        if check:
            if poly.degree < 1:
                raise ValueError("defining polynomial must have positive degree")
            if lo > hi:
                raise ValueError("empty isolating interval")
            if lo == hi:
                if poly(lo) != 0:
                    raise ValueError("point interval is not a root")
            else:
                if poly(lo) == 0 or poly(hi) == 0:
                    raise ValueError("interval endpoint is a root")
                if count_roots(sturm_sequence(poly), lo, hi) != 1:
                    raise ValueError("interval does not isolate exactly one root")
        if lo == hi and poly.degree > 1:
            poly = UniPoly((-lo, 1))
        object.__setattr__(self, "minimal_poly", poly)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicReal is immutable")

    @classmethod
    def from_rational(cls, r) -> AlgebraicReal:
        r = Fraction(r)
        return cls(UniPoly((-r, 1)), r, r, check=False)

    @property
    def interval(self) -> Interval:
        return self.lo, self.hi

    @property
    def is_rational(self) -> bool:
        return self.minimal_poly.degree == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        c0, c1 = self.minimal_poly.coeffs
        return -c0 / c1

    def __repr__(self):
        if self.is_rational:
            return f"AlgebraicReal({self.to_fraction()})"
        return f"AlgebraicReal({self.minimal_poly.to_str()}, [{self.lo}, {self.hi}])"

    def __float__(self):
        if self.is_rational:
            return float(self.to_fraction())
        return float(self.refine(Fraction(1, 2**60)).lo)

    # ---- refinement -------------------------------------------------------

    def _halve(self) -> AlgebraicReal:
        if self.lo == self.hi:
            return self
        lo, hi = bisect_root(self.minimal_poly, self.lo, self.hi)
        if lo == hi:
            return AlgebraicReal(UniPoly((-lo, 1)), lo, hi, check=False)
        return AlgebraicReal(self.minimal_poly, lo, hi, check=False)

    def refine(self, width) -> AlgebraicReal:
        """Same root with isolating interval no wider than ``width``."""
        width = Fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        if self.is_rational:
            r = self.to_fraction()
            return AlgebraicReal.from_rational(r)
        out = self
        while out.hi - out.lo > width:
            out = out._halve()
        return out

    # ---- sign and comparison ---------------------------------------------

    def sign(self) -> int:
        if self.is_rational:
            r = self.to_fraction()
            return (r > 0) - (r < 0)
        # endpoints are not roots, so 0 is either outside or strictly inside
        out = self
        while out.lo < 0 < out.hi:
            if out.minimal_poly(Fraction(0)) == 0:
                return 0
            out = out._halve()
        return 1 if out.lo >= 0 else -1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.from_rational(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if self.is_rational and other.is_rational:
            return self.to_fraction() == other.to_fraction()
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return False
        g = poly_gcd(self.minimal_poly, other.minimal_poly)
        if g.degree < 1:
            return False
        if lo == hi:
            return g(lo) == 0
        # both intervals are proper, so neither endpoint is a root of g
        return count_roots(sturm_sequence(g), lo, hi) == 1

    __hash__ = None

    def compare(self, other) -> int:
        if not isinstance(other, AlgebraicReal):
            other = AlgebraicReal.from_rational(other)
        if self == other:
            return 0
        a, b = self, other
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            a, b = a._halve(), b._halve()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # ---- arithmetic via resultants ----------------------------------------

    def __neg__(self):
        return AlgebraicReal(self.minimal_poly.reflect().monic(), -self.hi, -self.lo, check=False)

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        if self.is_rational and other.is_rational:
            return AlgebraicReal.from_rational(self.to_fraction() + other.to_fraction())
        q = other.minimal_poly
        n = q.degree

        def at(x0):
            # q(x0 - y) as a polynomial in y
            return q.compose(UniPoly((x0, -1)))

        bound = self.minimal_poly.degree * n
        poly = _resultant_poly(self.minimal_poly, at, bound)
        return _select_root(poly, lambda a, b: iv_add(a.interval, b.interval), self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        if self.is_rational and other.is_rational:
            return AlgebraicReal.from_rational(self.to_fraction() * other.to_fraction())
        if self.sign() == 0 or other.sign() == 0:
            return AlgebraicReal.from_rational(0)
        q = _strip_zero_roots(other.minimal_poly)
        p = _strip_zero_roots(self.minimal_poly)
        a = AlgebraicReal(p, self.lo, self.hi, check=False) if not self.is_rational else self
        n = q.degree

        def at(x0):
            # y^n q(x0 / y) = sum q_i x0^i y^(n-i)
            return UniPoly(q.coeffs[n - j] * x0 ** (n - j) for j in range(n + 1))

        bound = p.degree * n
        poly = _resultant_poly(p, at, bound)
        return _select_root(poly, lambda u, v: iv_mul(u.interval, v.interval), a, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = AlgebraicReal.from_rational(1)
        for _ in range(n):
            out = out * self
        return out


def _lift(x) -> AlgebraicReal | None:
    if isinstance(x, AlgebraicReal):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicReal.from_rational(x)
    return None


def _strip_zero_roots(p: UniPoly) -> UniPoly:
    cs = p.coeffs
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    return UniPoly(cs[k:])


def _resultant_poly(p: UniPoly, at: Callable[[Fraction], UniPoly], degree_bound: int) -> UniPoly:
    """``x -> Res_y(p(y), at(x)(y))`` recovered by interpolation."""
    xs = list(range(degree_bound + 1))
    ys = [resultant(p, at(Fraction(x))) for x in xs]
    return interpolate(xs, ys)


def _select_root(poly: UniPoly, enclose, a: AlgebraicReal, b: AlgebraicReal) -> AlgebraicReal:
    candidates = real_roots(poly)
    while True:
        box = enclose(a, b)
        hits = [i for i, c in enumerate(candidates) if _overlaps(box, c.interval)]
        if len(hits) == 1:
            return candidates[hits[0]]
        if not hits:
            raise ArithmeticError("enclosure lost every candidate root")
        a, b = a._halve(), b._halve()
        for i in hits:
            candidates[i] = candidates[i]._halve()


def real_roots(p: UniPoly) -> list[AlgebraicReal]:
    """All distinct real roots of ``p`` in ascending order.

    Rational roots found by the rational root test are returned with a
    linear defining polynomial.
    """
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    rats = rational_roots(q)
    irrational = q
    for r in rats:
        irrational = irrational // UniPoly((-r, 1))
    out = []
    for lo, hi in sturm_isolate(q):
        inside = [r for r in rats if lo < r < hi]
        if inside:
            out.append(AlgebraicReal.from_rational(inside[0]))
        else:
            out.append(AlgebraicReal(irrational.monic(), lo, hi, check=False))
    return out
