"""Univariate polynomials over Q, Sturm sequences and real-root isolation."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import determinant


class UniPoly:
    """Dense polynomial with rational coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.to_str()})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            other = Fraction(other)
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self * (1 / self.leading)

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reflect(self) -> UniPoly:
        """p(-x)."""
        return UniPoly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def primitive_integer(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading term."""
        if not self.coeffs:
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        ints = [i // g for i in ints]
        if ints[-1] < 0:
            ints = [-i for i in ints]
        return ints

    def sign_at(self, x) -> int:
        v = self(Fraction(x))
        return (v > 0) - (v < 0)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r)
    return [s for s in seq if s]


def sign_variations(values: Sequence) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq: Sequence[UniPoly], lo, hi) -> int:
    """Distinct roots in ``(lo, hi]`` of the squarefree head of a Sturm sequence."""
    lo, hi = Fraction(lo), Fraction(hi)
    return sign_variations([s(lo) for s in seq]) - sign_variations([s(hi) for s in seq])


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(q: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    step = (hi - lo) / 8
    k = 1
    while q(mid) == 0:
        mid = (lo + hi) / 2 + ((-1) ** k) * step / (k + 1)
        k += 1
    return mid


def sturm_isolate(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root, in ascending order.

    Endpoints are never roots, so the squarefree part changes sign across
    every returned interval.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    bound = root_bound(q)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _split_point(q, lo, hi)
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    # neighbours produced by one split share an endpoint; pull them apart
    for i in range(len(out) - 1):
        while out[i][1] >= out[i + 1][0]:
            out[i] = _tighten(q, *out[i])
            out[i + 1] = _tighten(q, *out[i + 1])
    return out


def _tighten(q: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Half of a sign-changing interval that still changes sign; endpoints stay non-roots."""
    mid = _split_point(q, lo, hi)
    if q.sign_at(mid) == q.sign_at(lo):
        return mid, hi
    return lo, mid


def bisect_root(q: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """One bisection step on a sign-changing interval of ``q``.

    Returns a point interval if the midpoint is itself a root.
    """
    mid = (lo + hi) / 2
    sm = q.sign_at(mid)
    if sm == 0:
        return mid, mid
    if sm == q.sign_at(lo):
        return mid, hi
    return lo, mid


def _divisors(n: int, limit: int) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly, limit: int = 10**10) -> list[Fraction]:
    """Rational roots by the rational root test, ascending.

    Coefficients beyond ``limit`` in absolute value are not factored; the
    search then only reports the root 0 if present.
    """
    if p.degree <= 0:
        return []
    ints = p.primitive_integer()
    roots = []
    shift = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    nums = _divisors(ints[0], limit)
    dens = _divisors(ints[-1], limit)
    if nums is None or dens is None:
        return sorted(roots)
    n = len(ints) - 1
    # Cauchy bound and the classical filters: a root a/b in lowest terms of
    # an integer polynomial f has (b - a) | f(1) and (b + a) | f(-1)
    bound = 1 + Fraction(max(abs(c) for c in ints[:-1]), abs(ints[-1]))
    f1 = sum(ints)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(ints))
    found = set()
    for b in dens:
        for a0 in nums:
            if a0 > bound * b or math.gcd(a0, b) != 1:
                continue
            for a in (a0, -a0):
                if f1 and (b - a) != 0 and f1 % (b - a):
                    continue
                if fm1 and (b + a) != 0 and fm1 % (b + a):
                    continue
                # homogeneous Horner: sum c_i a^i b^(n-i)
                acc, bp = 0, 1
                for c in reversed(ints):
                    acc = acc * a + c * bp
                    bp *= b
                if acc == 0:
                    found.add(Fraction(a, b))
    return sorted(roots + list(found))


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Resultant via the Sylvester determinant."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return p.leading ** n
    if n == 0:
        return q.leading ** m
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return determinant(rows)


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Newton interpolation through ``(xs[i], ys[i])``."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UniPoly((coef[-1],)) if coef else UniPoly()
    for i in range(n - 2, -1, -1):
        out = out * UniPoly((-xs[i], 1)) + coef[i]
    return out
