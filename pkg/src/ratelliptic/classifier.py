"""Ellipticity bounds and the cohomological classification in dimensions 5 and 6."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DualityViolation, MalformedRing, NotInCaseB, NotSimplyConnected, ReductionMismatch
from .exact.algebraic import AlgebraicReal, real_roots
from .exact.fields import RealTower, TowerElement
from .exact.linalg import QMatrix, kernel_basis
from .exact.poly import UniPoly, poly_gcd, rational_roots, resultant
from .graded import GradedPoly, QuotientAlgebra, poincare_pairing_check
from .minimal_model import RankTable, build_model, pi3_rank_dim5


class VerdictTag(str, Enum):
    CohomologySphere = "CohomologySphere"
    ProductS2S3 = "ProductS2S3"
    ProductS2S4 = "ProductS2S4"
    ProductS3S3 = "ProductS3S3"
    ComplexProjective3 = "ComplexProjective3"
    S2xCP2 = "S2xCP2"
    NotGeometricallyFormal_b2_2 = "NotGeometricallyFormal_b2_2"
    RankProfileS2S2S2 = "RankProfileS2S2S2"
    Impossible = "Impossible"


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    detail: str = ""
    ranks: RankTable | None = None


@dataclass(frozen=True)
class EllipticProfile:
    dimension: int
    ranks: RankTable

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")


def elliptic_sums(ranks: RankTable) -> tuple[int, int]:
    """``(sum of r*rk pi_r over even r, same over odd r)``."""
    even = sum(r * n for r, n in ranks.ranks.items() if r % 2 == 0)
    odd = sum(r * n for r, n in ranks.ranks.items() if r % 2 == 1)
    return even, odd


def check_elliptic_inequalities(p: EllipticProfile) -> bool:
    even, odd = elliptic_sums(p.ranks)
    return even <= p.dimension and odd <= 2 * p.dimension - 1


# ---- dimension 5 ---------------------------------------------------------------


def classify_dim5(b2: int) -> Verdict:
    if b2 < 0:
        raise ValueError("b2 must be nonnegative")
    pi3 = pi3_rank_dim5(b2)
    if b2 == 0:
        return Verdict(VerdictTag.CohomologySphere, "S^5")
    if b2 == 1:
        return Verdict(VerdictTag.ProductS2S3, "S^2 x S^3")
    return Verdict(VerdictTag.Impossible, f"rk pi_3 = b2 + b2(b2+1)/2 = {pi3} > 3")


# ---- real scalars ---------------------------------------------------------------


def _preferred_roots(p: UniPoly) -> list[AlgebraicReal]:
    """Real roots ordered: rational ones, then positive ascending, then negative descending."""
    roots = real_roots(p)
    rational = [r for r in roots if r.is_rational]
    rational.sort(key=lambda r: (abs(r.to_fraction()), r.to_fraction() < 0))
    irrational = [r for r in roots if not r.is_rational]
    positive = [r for r in irrational if r.sign() > 0]
    negative = [r for r in irrational if r.sign() < 0][::-1]
    return rational + positive + negative


def _lift_all(values):
    """Put rationals and algebraic reals into one scalar ring.

    Returns ``(tower or None, lifted)`` where rational values stay
    :class:`Fraction` when no tower is needed.
    """
    irr = [v for v in values if isinstance(v, AlgebraicReal) and not v.is_rational]
    tower = RealTower(irr) if irr else None
    out = []
    k = 0
    for v in values:
        if isinstance(v, AlgebraicReal) and not v.is_rational:
            out.append(tower.gen(k))
            k += 1
        else:
            q = v.to_fraction() if isinstance(v, AlgebraicReal) else Fraction(v)
            out.append(tower(q) if tower is not None else q)
    return tower, out


def _scalar_is_zero(c) -> bool:
    if isinstance(c, TowerElement):
        return c.is_zero()
    return c == 0


def _exact_sqrt(r: Fraction) -> AlgebraicReal:
    """Positive square root of a positive rational."""
    return [x for x in real_roots(UniPoly((-r, 0, 1))) if x.sign() > 0][0]


def _clean(poly: GradedPoly) -> GradedPoly:
    """Drop coefficients whose real value is zero."""
    return GradedPoly(poly.algebra, {m: c for m, c in poly.terms.items() if not _scalar_is_zero(c)})


# ---- b2 = 2 ------------------------------------------------------------------------


def _h2_pair(q: QuotientAlgebra) -> tuple[QuotientAlgebra, GradedPoly, GradedPoly]:
    q = q.extended(6)
    if q.dim(2) != 2:
        raise MalformedRing(f"expected dim H^2 = 2, found {q.dim(2)}")
    x, y = q.basis_polys(2)
    return q, x, y


def _top(q: QuotientAlgebra, poly: GradedPoly):
    """Coordinate of a degree-6 element against the basis of a one-dimensional H^6."""
    return q.coordinates(poly, 6)[0]


@dataclass(frozen=True)
class SquareZeroClass:
    """``s*x + t*y`` in the basis of ``H^2``; coefficients are rational or tower elements."""

    s: object
    t: object
    tower: RealTower | None = None
    t_value: AlgebraicReal | None = None

    def to_poly(self, q: QuotientAlgebra) -> GradedPoly:
        x, y = q.basis_polys(2)
        return x * self.s + y * self.t


def find_square_zero_class(q: QuotientAlgebra) -> SquareZeroClass | None:
    """A nonzero real degree-2 class with vanishing square, if one exists.

    Writing ``v = s*x + t*y``, each coordinate of ``v^2`` in ``H^4`` is a
    binary quadratic form.  ``s = 0`` is the single class ``y``; otherwise
    scale to ``s = 1`` and look for a common real root of the quadratics in
    ``t``.
    """
    q = q.extended(4)
    if q.dim(2) != 2:
        raise MalformedRing(f"expected dim H^2 = 2, found {q.dim(2)}")
    x, y = q.basis_polys(2)
    a = q.coordinates(x * x, 4)
    b = q.coordinates(x * y, 4)
    c = q.coordinates(y * y, 4)
    quads = [UniPoly((a[k], 2 * b[k], c[k])) for k in range(len(a))]
    nonzero = [p for p in quads if p]
    if not nonzero:
        return SquareZeroClass(Fraction(1), Fraction(0))
    # a nonzero resultant rules out a common complex root
    p0 = nonzero[0]
    common = not any(p0.degree >= 1 and p.degree >= 1 and resultant(p0, p) != 0 for p in nonzero[1:])
    if common:
        g = nonzero[0]
        for p in nonzero[1:]:
            g = poly_gcd(g, p)
        if g.degree >= 1:
            roots = _preferred_roots(g)
            if roots:
                t = roots[0]
                if t.is_rational:
                    return SquareZeroClass(Fraction(1), t.to_fraction(), None, t)
                tower, (one, tt) = _lift_all([Fraction(1), t])
                return SquareZeroClass(one, tt, tower, t)
    if all(ck == 0 for ck in c):
        return SquareZeroClass(Fraction(0), Fraction(1))
    return None


def matches_s2_cp2(q: QuotientAlgebra, v: SquareZeroClass) -> bool:
    """Whether ``v^2 = 0`` extends to a basis ``v, w`` with ``w^3 = 0`` and ``v w^2 != 0``."""
    q, x, y = _h2_pair(q)
    if q.dim(6) != 1 or q.dim(4) != 2:
        return False
    vp = v.to_poly(q)
    if not q.is_zero(vp * vp):
        return False
    w = y if not _scalar_is_zero(v.s) else x
    vw2 = _top(q, vp * w * w)
    w3 = _top(q, w * w * w)
    if _scalar_is_zero(vw2):
        return False
    # w' = w - (w^3 / 3 v w^2) v, scaled by 3 v w^2 to avoid division
    w1 = w * (3 * vw2) - vp * w3
    return q.is_zero(w1 * w1 * w1) and not _scalar_is_zero(_top(q, vp * w1 * w1))


@dataclass(frozen=True)
class CubicInstance:
    alpha: Fraction
    polynomial: UniPoly
    chosen_root: AlgebraicReal


def cubic_root(alpha) -> CubicInstance:
    """A real root of ``1 - 3a^2 + alpha (a^3 - 3a)``.

    Rational roots are preferred, then the smallest positive root, then
    the largest negative one.
    """
    alpha = Fraction(alpha)
    poly = UniPoly((1, -3 * alpha, -3, alpha))
    return CubicInstance(alpha, poly, _preferred_roots(poly)[0])


@dataclass(frozen=True)
class NormalizedPair:
    """Generators with ``xbar^2 + epsilon*ybar^2 = 0`` and ``ybar^3 = 0``."""

    xbar: GradedPoly
    ybar: GradedPoly
    epsilon: int
    witness_relations: tuple
    tower: RealTower | None
    branch: str
    degree4_relation: tuple
    cubic: UniPoly | None = None
    parameter: AlgebraicReal | None = None
    alpha: Fraction | None = None


def normalize_generators(q: QuotientAlgebra) -> NormalizedPair:
    """Change of basis of ``H^2`` for a ring without square-zero degree-2 classes.

    With degree-4 relation ``a x^2 + b xy + c y^2``:

    * ``a = c = 0``: the relation is ``xy = 0``; with ``y^3 = alpha x^3``
      and ``r`` the real cube root of ``alpha``, take ``xbar = r x + y``,
      ``ybar = r x - y`` and ``epsilon = -1``.
    * otherwise complete the square to ``x1^2 + beta y^2 = 0`` and set
      ``s = sqrt|beta|``, ``y1 = s y``, ``epsilon = sign(beta)``.  If a cube
      vanishes the pair is ``(x1, y1)`` up to order; else pick a real root
      ``tau`` of the rational cubic ``(x1 + tau y)^3 = 0`` and take
      ``ybar = x1 + tau y``, ``xbar = (tau/s) x1 - epsilon s y``.
    """
    q, x, y = _h2_pair(q)
    if find_square_zero_class(q) is not None:
        raise NotInCaseB("a degree-2 class with zero square exists")
    if q.dim(4) != 2 or q.dim(6) != 1:
        raise MalformedRing(f"expected dim H^4 = 2 and dim H^6 = 1, found {q.dim(4)} and {q.dim(6)}")
    products = QMatrix.from_columns([q.coordinates(p, 4) for p in (x * x, x * y, y * y)], nrows=2)
    kernel = kernel_basis(products)
    if len(kernel) != 1:
        raise MalformedRing("expected exactly one degree-4 relation among products of degree-2 classes")
    a, b, c = kernel[0]
    cubes = [_top(q, x ** (3 - i) * y ** i) for i in range(4)]
    if not any(cubes):
        raise MalformedRing("no degree-6 products survive; expected exactly one degree-6 relation")

    cubic = parameter = alpha = None
    if a == 0 and c == 0:
        branch = "product-zero"
        if cubes[0] == 0 or cubes[3] == 0:
            raise MalformedRing("relation xy = 0 needs x^3 and y^3 nonzero")
        alpha = cubes[3] / cubes[0]
        r = real_roots(UniPoly((-alpha, 0, 0, 1)))[0]
        tower, (rr,) = _lift_all([r])
        xbar = x * rr + y
        ybar = x * rr - y
        epsilon = -1
        parameter = r
    else:
        p, s_gen = (x, y) if a != 0 else (y, x)
        lead = a if a != 0 else c
        cross = b / lead
        other = (c if a != 0 else a) / lead
        x1 = p + s_gen * (cross / 2)
        beta = other - cross * cross / 4
        if beta == 0:
            raise NotInCaseB("completing the square gives a class with zero square")
        sigma = 1 if beta > 0 else -1
        s = _exact_sqrt(abs(beta))
        x1_cube = _top(q, x1 * x1 * x1)
        y_cube = _top(q, s_gen * s_gen * s_gen)
        epsilon = sigma
        if x1_cube == 0 or y_cube == 0:
            branch = "cube-zero"
            tower, (ss,) = _lift_all([s])
            y1 = s_gen * ss
            xbar, ybar = (y1, x1) if x1_cube == 0 else (x1, y1)
        else:
            branch = "cubic"
            coeffs = (x1_cube, 3 * _top(q, x1 * x1 * s_gen), 3 * _top(q, x1 * s_gen * s_gen), y_cube)
            cubic = UniPoly(coeffs)
            usable = []
            for tau in _preferred_roots(cubic):
                if sigma < 0 and (tau * tau) == abs(beta):
                    continue  # xbar and ybar would be proportional
                usable.append(tau)
            if not usable:
                raise MalformedRing("every real root of the cubic gives dependent generators")
            tau = usable[0]
            parameter = tau
            tower, (tt, ss) = _lift_all([tau, s])
            xbar = x1 * (tt * ss * (1 / abs(beta))) - s_gen * (sigma * ss)
            ybar = x1 + s_gen * tt
            if s.is_rational:
                alpha = s.to_fraction() ** 3 * y_cube / x1_cube

    w1 = q.reduce(xbar * xbar + ybar * ybar * epsilon)
    w2 = q.reduce(ybar * ybar * ybar)
    if not (q.is_zero(w1) and q.is_zero(w2)):
        raise ReductionMismatch(f"normalized generators fail their relations ({branch} branch)")
    det = _det2(q, xbar, ybar)
    if _scalar_is_zero(det):
        raise ReductionMismatch("normalized generators are linearly dependent")
    return NormalizedPair(
        xbar=xbar,
        ybar=ybar,
        epsilon=epsilon,
        witness_relations=(_clean(w1), _clean(w2)),
        tower=tower,
        branch=branch,
        degree4_relation=(a, b, c),
        cubic=cubic,
        parameter=parameter,
        alpha=alpha,
    )


def _det2(q: QuotientAlgebra, u: GradedPoly, v: GradedPoly):
    cu = q.coordinates(u, 2)
    cv = q.coordinates(v, 2)
    return cu[0] * cv[1] - cu[1] * cv[0]


# ---- dimension 6 -------------------------------------------------------------------


def classify_dim6(q: QuotientAlgebra) -> Verdict:
    q = q.extended(6)
    if q.dim(0) != 1 or q.dim(1) != 0:
        raise NotSimplyConnected("dimension-6 classification needs H^0 = Q and H^1 = 0")
    if not poincare_pairing_check(q, 6):
        raise DualityViolation("the ring does not satisfy 6-dimensional Poincare duality")
    b2, b3 = q.dim(2), q.dim(3)

    if b2 >= 4:
        return Verdict(VerdictTag.Impossible, f"b2 = {b2} > 3 violates sum 2k rk pi_2k <= 6")
    if b2 == 0:
        if b3 == 0:
            return Verdict(VerdictTag.CohomologySphere, "S^6")
        if b3 == 2:
            return Verdict(VerdictTag.ProductS3S3, "S^3 x S^3")
        return Verdict(VerdictTag.Impossible, f"rk pi_3 = b3 = {b3} > 3")
    if b2 == 3:
        _, ranks = build_model(q, 12)
        if ranks.nonzero() == {2: 3, 3: 3}:
            return Verdict(VerdictTag.RankProfileS2S2S2, "rk pi_2 = rk pi_3 = 3", ranks)
        return Verdict(VerdictTag.Impossible, f"ranks {ranks.nonzero()} differ from (3, 3)", ranks)

    _, ranks = build_model(q, 4)
    if not check_elliptic_inequalities(EllipticProfile(6, ranks)):
        return Verdict(
            VerdictTag.Impossible,
            f"ranks through degree 4 {ranks.nonzero()} already violate the ellipticity bounds",
            ranks,
        )
    if b2 == 1:
        x = q.basis_polys(2)[0]
        if q.is_zero(x * x):
            return Verdict(VerdictTag.ProductS2S4, "S^2 x S^4", ranks)
        return Verdict(VerdictTag.ComplexProjective3, "CP^3", ranks)
    v = find_square_zero_class(q)
    if v is not None and matches_s2_cp2(q, v):
        return Verdict(VerdictTag.S2xCP2, "S^2 x CP^2", ranks)
    return Verdict(VerdictTag.NotGeometricallyFormal_b2_2, "no degree-2 class with zero square", ranks)
