from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratelliptic.errors import (
    DuplicateGenerator,
    InhomogeneousRelation,
    PresentationError,
    PresentationSyntaxError,
    UnknownGenerator,
)
from ratelliptic.graded import FreeAlgebra, Generator, GradedPoly, Presentation
from ratelliptic.presentation_io import format_presentation, parse_presentation

import rings


def test_simple_parse():
    p = parse_presentation("generator x 2\nrelation x^3")
    x = p.algebra.gen("x")
    assert p.relations == (x ** 3,)
    assert p.formal_dimension is None


def test_flag_round_trip():
    p = parse_presentation(rings.FLAG)
    assert parse_presentation(format_presentation(p)) == p
    assert format_presentation(p) == rings.FLAG


def test_comments_whitespace_rationals_and_signs():
    text = "  # header\n dim=6\ngenerator   x 2 # c\ngenerator y 2\nrelation -x^2 + 1/2 * x*y - 3*y^2\n\nrelation x^3"
    p = parse_presentation(text)
    x, y = p.algebra.gens()
    assert p.relations[0] == -(x * x) + x * y * Fraction(1, 2) - y * y * 3
    assert p.formal_dimension == 6


@pytest.mark.parametrize(
    "text, exc, line, column",
    [
        ("generator x 2\nrelation x^2 + x", InhomogeneousRelation, 2, None),
        ("generator x 2\nrelation x^2 + z", UnknownGenerator, 2, 16),
        ("generator x 2\ngenerator x 4", DuplicateGenerator, 2, 11),
        ("generator x 2\nrelation x^2 +", PresentationSyntaxError, 2, 15),
        ("generator x 2\nrelation x^^2", PresentationSyntaxError, 2, 12),
        ("generator x 2\nrelation x^2 $ x", PresentationSyntaxError, 2, 14),
        ("generator x two", PresentationSyntaxError, 1, 13),
        ("generator x 0", PresentationSyntaxError, 1, 13),
        ("dim 6", PresentationSyntaxError, 1, 5),
        ("frobnicate x", PresentationSyntaxError, 1, 1),
        ("generator x 2\nrelation 1/0*x^2", PresentationSyntaxError, 2, 12),
        ("generator u 3\ngenerator v 3\nrelation u*v + v*u", PresentationError, 3, None),
    ],
)
def test_error_positions(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_presentation(text)
    assert info.value.line == line
    assert info.value.column == column
    assert f"line {line}" in str(info.value)


NAMES = ["x", "y", "z", "a1", "b_2", "Q"]


@st.composite
def presentations(draw):
    n = draw(st.integers(1, 4))
    names = draw(st.permutations(NAMES))[:n]
    degs = [draw(st.integers(1, 4)) for _ in range(n)]
    alg = FreeAlgebra([Generator(nm, d) for nm, d in zip(names, degs)])
    rels = []
    lo = 2 * min(degs)
    for _ in range(draw(st.integers(0, 3))):
        d = draw(st.integers(lo, lo + 4))
        monos = alg.monomials(d)
        if not monos:
            continue
        coeffs = draw(
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=len(monos), max_size=len(monos))
        )
        poly = GradedPoly(alg, dict(zip(monos, coeffs)))
        if poly:
            rels.append(poly)
    dim = draw(st.one_of(st.none(), st.integers(0, 12)))
    return Presentation(alg.generators, tuple(rels), dim)


@given(presentations())
def test_round_trip(p):
    text = format_presentation(p)
    again = parse_presentation(text)
    assert again == p
    assert format_presentation(again) == text
