"""Reading and writing presentation files.

The format is line oriented::

    # complete flag manifold SU(3)/T^2
    dim = 6
    generator x 2
    generator y 2
    relation x^2 + x*y + y^2
    relation x^3

A term is an optional rational coefficient followed by ``*``-separated
factors ``name`` or ``name^k``.  The first term of an expression may carry a
sign.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DuplicateGenerator,
    InhomogeneousRelation,
    PresentationError,
    PresentationSyntaxError,
    UnknownGenerator,
)
from .graded import FreeAlgebra, Generator, GradedPoly, Presentation

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^=])")


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    text: str
    column: int  # 1-based


def tokenize(text: str, line: int | None = None, offset: int = 0) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1 + offset)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), pos + 1 + offset))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1 + offset))
    return tokens


class _ExprParser:
    def __init__(self, tokens, algebra: FreeAlgebra, line):
        self.tokens = tokens
        self.pos = 0
        self.alg = algebra
        self.line = line

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PresentationSyntaxError(msg, self.line, tok.column)

    def expect_int(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            self.fail(f"expected an integer, found {tok.text or 'end of line'!r}", tok)
        return int(tok.text)

    def expression(self) -> GradedPoly:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
        total = self.term() * sign
        while True:
            tok = self.peek()
            if tok.kind == "end":
                return total
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                t = self.term()
                total = total + t if tok.text == "+" else total - t
            else:
                self.fail(f"expected '+' or '-', found {tok.text!r}")

    def term(self) -> GradedPoly:
        tok = self.peek()
        if tok.kind == "int":
            coeff = self.rational()
            out = self.alg.one() * coeff
            while self.peek().kind == "op" and self.peek().text == "*":
                self.take()
                out = out * self.factor()
            return out
        if tok.kind == "name":
            out = self.factor()
            while self.peek().kind == "op" and self.peek().text == "*":
                self.take()
                out = out * self.factor()
            return out
        self.fail(f"expected a term, found {tok.text or 'end of line'!r}")

    def rational(self) -> Fraction:
        num = int(self.take().text)
        if self.peek().kind == "op" and self.peek().text == "/":
            self.take()
            tok = self.peek()
            den = self.expect_int()
            if den == 0:
                self.fail("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> GradedPoly:
        tok = self.take()
        if tok.kind != "name":
            self.fail(f"expected a generator name, found {tok.text or 'end of line'!r}", tok)
        if tok.text not in self.alg.index:
            raise UnknownGenerator(f"unknown generator {tok.text!r}", self.line, tok.column)
        g = self.alg.gen(tok.text)
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            return g ** self.expect_int()
        return g


def parse_polynomial(text: str, algebra: FreeAlgebra, line: int | None = None, offset: int = 0) -> GradedPoly:
    parser = _ExprParser(tokenize(text, line, offset), algebra, line)
    return parser.expression()


class _Line(NamedTuple):
    number: int
    keyword: str
    rest: str
    rest_offset: int  # 0-based column where ``rest`` starts


def _split_lines(text: str) -> list[_Line]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        stripped = body.lstrip()
        lead = len(body) - len(stripped)
        m = NAME_RE.match(stripped)
        if not m:
            raise PresentationSyntaxError("expected 'dim', 'generator' or 'relation'", number, lead + 1)
        out.append(_Line(number, m.group(0), stripped[m.end():], lead + m.end()))
    return out


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text; errors carry line and column."""
    dim = None
    gens: list[Generator] = []
    gen_lines: dict[str, int] = {}
    relation_lines: list[_Line] = []
    for ln in _split_lines(text):
        if ln.keyword == "dim":
            toks = tokenize(ln.rest, ln.number, ln.rest_offset)
            if not (len(toks) == 3 and toks[0].text == "=" and toks[1].kind == "int"):
                bad = toks[0] if toks[0].text != "=" else toks[1] if toks[1].kind != "int" else toks[2]
                raise PresentationSyntaxError("expected 'dim = <integer>'", ln.number, bad.column)
            if dim is not None:
                raise PresentationSyntaxError("dimension declared twice", ln.number, 1)
            dim = int(toks[1].text)
        elif ln.keyword == "generator":
            toks = tokenize(ln.rest, ln.number, ln.rest_offset)
            if len(toks) != 3 or toks[0].kind != "name" or toks[1].kind != "int":
                bad = toks[0] if toks[0].kind != "name" else toks[1] if toks[1].kind != "int" else toks[2]
                raise PresentationSyntaxError("expected 'generator <name> <degree>'", ln.number, bad.column)
            name, degree = toks[0].text, int(toks[1].text)
            if degree < 1:
                raise PresentationSyntaxError("generator degree must be positive", ln.number, toks[1].column)
            if name in gen_lines:
                raise DuplicateGenerator(
                    f"generator {name!r} already declared on line {gen_lines[name]}", ln.number, toks[0].column
                )
            gen_lines[name] = ln.number
            gens.append(Generator(name, degree))
        elif ln.keyword == "relation":
            relation_lines.append(ln)
        else:
            raise PresentationSyntaxError(f"unknown keyword {ln.keyword!r}", ln.number, ln.rest_offset - len(ln.keyword) + 1)

    alg = FreeAlgebra(gens)
    min_deg = min(alg.degrees, default=0)
    relations = []
    for ln in relation_lines:
        poly = parse_polynomial(ln.rest, alg, ln.number, ln.rest_offset)
        if poly.is_zero():
            raise PresentationError("relation is identically zero", ln.number)
        degrees = sorted(poly.degrees())
        if len(degrees) > 1:
            raise InhomogeneousRelation(
                f"inhomogeneous relation: terms of degrees {', '.join(map(str, degrees))}", ln.number
            )
        if degrees[0] < 2 * min_deg:
            raise PresentationError(
                f"relation of degree {degrees[0]} is below the decomposables (degree {2 * min_deg})", ln.number
            )
        relations.append(poly)
    return Presentation(alg.generators, tuple(relations), dim)


def format_presentation(p: Presentation) -> str:
    lines = []
    if p.formal_dimension is not None:
        lines.append(f"dim = {p.formal_dimension}")
    for g in p.generators:
        lines.append(f"generator {g.name} {g.degree}")
    for r in p.relations:
        lines.append(f"relation {r.to_str()}")
    return "\n".join(lines) + "\n"


def read_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())
