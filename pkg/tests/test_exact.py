from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from ratelliptic.exact import (
    AlgebraicReal,
    QMatrix,
    RealTower,
    UniPoly,
    determinant,
    image_basis,
    image_complement,
    kernel_basis,
    rank,
    rational_roots,
    real_roots,
    refine,
    resultant,
    squarefree_part,
    sturm_isolate,
)

small = st.integers(-5, 5)


def matrices(max_rows=6, max_cols=7):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def polys(min_deg=1, max_deg=5):
    return st.lists(small, min_size=min_deg + 1, max_size=max_deg + 1).filter(lambda c: c[-1] != 0)


# ---- linear algebra ---------------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(QMatrix.from_rows([[1, 1], [1, 1]])) == [(1, -1)]
    assert kernel_basis(QMatrix.identity(2)) == []
    assert kernel_basis(QMatrix.zeros(2, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_complement_examples():
    assert image_complement(QMatrix.zeros(2, 1), 2) == [(1, 0), (0, 1)]
    assert image_complement(QMatrix.identity(2), 2) == []
    assert image_complement(QMatrix.from_rows([[1], [0]]), 2) == [(0, 1)]
    assert image_complement([], 0) == []


def test_determinant_matches_cofactor_expansion():
    m = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    cof = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    assert determinant(m) == cof


@given(matrices())
def test_rank_nullity_and_sympy_rank(rows):
    m = QMatrix.from_rows(rows)
    ker = kernel_basis(m)
    r = rank(m)
    assert r == sympy.Matrix(rows).rank()
    assert len(ker) + r == m.cols
    for v in ker:
        assert all(x == 0 for x in m @ v)


@given(matrices())
def test_image_plus_complement_is_everything(rows):
    m = QMatrix.from_rows(rows)
    img = image_basis(m)
    comp = image_complement(m, m.rows)
    assert len(img) + len(comp) == m.rows
    assert rank(img + comp, m.rows) == m.rows if img + comp else m.rows == 0


# ---- polynomials -------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_isolate(UniPoly((-2, 0, 1))) == sorted(sturm_isolate(UniPoly((-2, 0, 1))))
    ivs = sturm_isolate(UniPoly((-2, 0, 1)))
    assert len(ivs) == 2
    assert ivs[0][1] < 0 < ivs[1][0]
    ivs = sturm_isolate(UniPoly((1, 0, -3)))
    assert len(ivs) == 2
    p = UniPoly((1, -3, -3, 1))
    assert p(Fraction(-1)) == 0
    assert any(lo <= -1 <= hi for lo, hi in sturm_isolate(p))
    with pytest.raises(ValueError):
        sturm_isolate(UniPoly(()))


@given(polys())
def test_sturm_counts_match_sympy(coeffs):
    p = UniPoly(coeffs)
    ivs = sturm_isolate(p)
    x = sympy.Symbol("x")
    expected = len(set(sympy.real_roots(sympy.Poly(list(reversed(coeffs)), x))))
    assert len(ivs) == expected
    q = squarefree_part(p)
    for lo, hi in ivs:
        assert lo < hi
        assert q(lo) != 0 and q(hi) != 0
        assert q(lo) * q(hi) < 0
    for (a, b), (c, d) in zip(ivs, ivs[1:]):
        assert b < c


@given(polys(), polys())
def test_resultant_matches_sylvester_oracle(a, b):
    # sympy.resultant flips the sign convention when deg a < deg b, so the
    # oracle is sympy's own Sylvester matrix determinant
    x = sympy.Symbol("x")
    fa = sympy.Poly(list(reversed(a)), x).as_expr()
    fb = sympy.Poly(list(reversed(b)), x).as_expr()
    expected = sylvester(fa, fb, x).det()
    got = resultant(UniPoly(a), UniPoly(b))
    assert got == Fraction(int(expected))
    assert (got == 0) == (sympy.degree(sympy.gcd(fa, fb), x) > 0)


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), min_size=1, max_size=4))
def test_rational_roots_recovered(roots):
    p = UniPoly.from_roots(roots)
    assert rational_roots(p) == sorted(set(roots))


# ---- algebraic reals -----------------------------------------------------------------


def sqrt(n):
    return [r for r in real_roots(UniPoly((-n, 0, 1))) if r.sign() > 0][0]


def test_refine_width_and_monotone():
    r2 = sqrt(2)
    fine = refine(r2, Fraction(1, 100))
    assert fine.hi - fine.lo <= Fraction(1, 100)
    assert r2.lo <= fine.lo and fine.hi <= r2.hi
    assert fine.lo ** 2 < 2 < fine.hi ** 2
    one = AlgebraicReal.from_rational(1)
    assert one.refine(Fraction(1, 10)).lo == one.refine(Fraction(1, 10)).hi == 1


def test_algebraic_arithmetic():
    r3 = sqrt(3).refine(Fraction(1, 1000))
    assert (r3 * r3) == 3
    assert (r3 * r3).is_rational
    s = sqrt(2) + sqrt(3)
    assert s.minimal_poly == UniPoly((1, 0, -10, 0, 1))
    assert sqrt(2) < sqrt(3)
    assert (sqrt(2) - sqrt(2)).sign() == 0
    assert (-sqrt(2)).sign() == -1


def test_real_roots_rational_first_class():
    roots = real_roots(UniPoly((1, -3, -3, 1)))
    assert [r.is_rational for r in roots] == [True, False, False]
    assert roots[0].to_fraction() == -1
    assert roots[1].minimal_poly == UniPoly((1, -4, 1))


def test_tower_zero_and_sign():
    r2, r3 = sqrt(2), sqrt(3)
    k = RealTower([r2, r3])
    a, b = k.gen(0), k.gen(1)
    assert (a * a).rational_value() == 2
    assert ((a + b) * (a + b) - 5 - 2 * a * b).is_zero()
    assert (a - b).sign() == -1
    assert (a * b - 2).sign() == 1
    # a non-irreducible defining polynomial: the element is zero in the real embedding only
    t = AlgebraicReal(UniPoly((-2, 0, 1)) * UniPoly((-3, 0, 1)), 1, Fraction(3, 2))
    kt = RealTower([t])
    g = kt.gen(0)
    assert bool(g * g - 2)
    assert (g * g - 2).is_zero()
