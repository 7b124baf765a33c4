"""Command-line interface.

Every command prints one JSON document on standard output::

    {"command": [...], "input_digest": "sha256:...", "result": {...},
     "tool": {"name": "ratelliptic", "version": "..."}}

Exit codes: 0 success, 1 usage or parse error, 2 precondition violation,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from importlib import resources

from . import __version__
from .biquotient import ActionMatrix, family3_ring, formality_obstruction, freeness_check
from .classifier import (
    EllipticProfile,
    NormalizedPair,
    VerdictTag,
    check_elliptic_inequalities,
    classify_dim5,
    classify_dim6,
    elliptic_sums,
    find_square_zero_class,
    normalize_generators,
)
from .errors import DualityViolation, InputError, PreconditionError, RatEllipticError, VerificationError
from .exact.algebraic import AlgebraicReal
from .exact.fields import RealTower, TowerElement
from .graded import GradedPoly, betti_numbers, build_quotient, poincare_pairing_check
from .minimal_model import RankTable, borel_model, build_model, pi3_rank_dim5
from .presentation_io import format_presentation, parse_presentation

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_VERIFICATION = 0, 1, 2, 3


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---- serialization ---------------------------------------------------------------


def fmt_rational(r) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def fmt_algebraic(a: AlgebraicReal) -> dict:
    if a.is_rational:
        return {"rational": fmt_rational(a.to_fraction())}
    a = a.refine(Fraction(1, 2**20))
    return {
        "polynomial": a.minimal_poly.to_str("x"),
        "interval": [fmt_rational(a.lo), fmt_rational(a.hi)],
        "approx": f"{float(a):.12g}",
    }


def fmt_tower(t: RealTower | None) -> list:
    if t is None:
        return []
    return [{"name": n, **fmt_algebraic(r)} for n, r in zip(t.names, t.roots)]


def fmt_scalar(c):
    if isinstance(c, TowerElement):
        q = c.rational_value()
        return fmt_rational(q) if q is not None else repr(c)
    return fmt_rational(c)


def fmt_ranks(ranks: RankTable) -> dict:
    return {str(r): n for r, n in sorted(ranks.ranks.items())}


def fmt_poly(p: GradedPoly) -> str:
    return p.to_str()


# ---- commands ----------------------------------------------------------------------


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path} is not UTF-8") from exc
    try:
        p = parse_presentation(text)
    except InputError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return p, "sha256:" + hashlib.sha256(raw).hexdigest()


def cmd_model(args) -> tuple[dict, str]:
    p, digest = _load(args.file)
    pm, ranks = build_model(p, args.max_degree)
    return {
        "stage": pm.stage,
        "generators": pm.named_generators(),
        "ranks": fmt_ranks(ranks),
    }, digest


def cmd_ranks(args) -> tuple[dict, str]:
    p, digest = _load(args.file)
    _, ranks = build_model(p, args.max_degree)
    return {"max_degree": args.max_degree, "ranks": fmt_ranks(ranks)}, digest


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")] if text.strip() else []
    except ValueError as exc:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from exc


def cmd_elliptic(args) -> tuple[dict, None]:
    values = _int_list(args.ranks, "--ranks")
    if any(v < 0 for v in values):
        raise UsageError("--ranks: ranks must be nonnegative")
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    ranks = RankTable({r: v for r, v in enumerate(values, start=2) if v})
    even, odd = elliptic_sums(ranks)
    return {
        "dimension": args.dim,
        "ranks": fmt_ranks(ranks),
        "even_sum": even,
        "even_bound": args.dim,
        "odd_sum": odd,
        "odd_bound": 2 * args.dim - 1,
        "elliptic_bounds_hold": check_elliptic_inequalities(EllipticProfile(args.dim, ranks)),
    }, None


def _normalization_doc(n: NormalizedPair) -> dict:
    return {
        "branch": n.branch,
        "degree4_relation": [fmt_rational(v) for v in n.degree4_relation],
        "xbar": fmt_poly(n.xbar),
        "ybar": fmt_poly(n.ybar),
        "epsilon": n.epsilon,
        "witness_relations": [fmt_poly(w) for w in n.witness_relations],
        "scalars": fmt_tower(n.tower),
        "cubic": n.cubic.to_str("t") if n.cubic is not None else None,
        "parameter": fmt_algebraic(n.parameter) if n.parameter is not None else None,
        "alpha": fmt_rational(n.alpha) if n.alpha is not None else None,
    }


def cmd_classify(args) -> tuple[dict, str]:
    p, digest = _load(args.file)
    q = build_quotient(p, max(args.dim, p.default_cap))
    if args.dim == 5:
        if not poincare_pairing_check(q, 5):
            raise DualityViolation("the ring does not satisfy 5-dimensional Poincare duality")
        b2 = q.dim(2)
        verdict = classify_dim5(b2)
        doc = {
            "dimension": 5,
            "betti": betti_numbers(q, 5),
            "verdict": verdict.tag.value,
            "detail": verdict.detail,
            "pi3_formula": pi3_rank_dim5(b2, q.dim(3)),
        }
        if b2 <= 1:
            _, ranks = build_model(q, 3)
            doc["pi3_model"] = ranks[3]
        return doc, digest
    verdict = classify_dim6(q)
    doc = {
        "dimension": 6,
        "betti": betti_numbers(q, 6),
        "verdict": verdict.tag.value,
        "detail": verdict.detail,
        "ranks": fmt_ranks(verdict.ranks) if verdict.ranks is not None else None,
    }
    if q.dim(2) == 2 and q.dim(3) == 0:
        v = find_square_zero_class(q)
        if v is not None:
            doc["square_zero_class"] = {
                "s": fmt_scalar(v.s),
                "t": fmt_scalar(v.t),
                "scalars": fmt_tower(v.tower),
            }
        elif verdict.tag is VerdictTag.NotGeometricallyFormal_b2_2:
            try:
                doc["normalization"] = _normalization_doc(normalize_generators(q))
            except PreconditionError as exc:
                doc["normalization"] = {"error": str(exc)}
    return doc, digest


def cmd_duality(args) -> tuple[dict, str]:
    p, digest = _load(args.file)
    if args.dim < 0:
        raise UsageError("--dim must be nonnegative")
    q = build_quotient(p, max(args.dim, p.default_cap))
    return {
        "dimension": args.dim,
        "betti": betti_numbers(q, args.dim),
        "poincare_duality": poincare_pairing_check(q, args.dim),
    }, digest


def cmd_biquotient(args) -> tuple[dict, None]:
    if (args.matrix is None) == (args.family3 is None):
        raise UsageError("biquotient needs exactly one of --matrix or --family3")
    if args.obstruction and args.family3 is None:
        raise UsageError("--obstruction applies to --family3 only")
    if args.matrix is not None:
        values = _int_list(args.matrix, "--matrix")
        if len(values) != 9:
            raise UsageError("--matrix: expected nine integers a1,a2,a3,b1,b2,b3,c1,c2,c3")
        m = ActionMatrix.from_flat(values)
        rep = freeness_check(m)
        return {
            "matrix": [list(row) for row in m.entries],
            "diagonal_ok": rep.diagonal_ok,
            "principal_minors": {"12": rep.minor_values[0], "13": rep.minor_values[1], "23": rep.minor_values[2]},
            "determinant": rep.det_value,
            "free": rep.free,
        }, None
    values = _int_list(args.family3, "--family3")
    if len(values) != 3:
        raise UsageError("--family3: expected three integers b1,c1,c2")
    ring = family3_ring(*values)
    q = ring.quotient()
    doc = {
        "parameters": {"b1": ring.b1, "c1": ring.c1, "c2": ring.c2},
        "presentation": format_presentation(ring.presentation).splitlines(),
        "betti": betti_numbers(q, 6),
        "poincare_duality": poincare_pairing_check(q, 6),
    }
    if args.obstruction:
        rep = formality_obstruction(ring, q)
        doc["obstruction"] = {
            "omega2_tilde": fmt_poly(rep.omega2_tilde),
            "omega3_tilde": fmt_poly(rep.omega3_tilde),
            "p": fmt_rational(rep.p),
            "q": fmt_rational(rep.q),
            "coefficient": fmt_rational(rep.coefficient),
            "top_class_nonzero": rep.top_class_nonzero,
            "verdict": rep.verdict.value,
        }
    return doc, None


def cmd_borel(args) -> tuple[dict, str]:
    p, digest = _load(args.file)
    cert = borel_model(p)
    model = cert.model
    return {
        "regular": cert.regular,
        "predicted_series": list(cert.predicted_series),
        "actual_series": list(cert.actual_series),
        "generators": [
            {"name": g.name, "degree": g.degree, "differential": fmt_poly(dg)}
            for g, dg in zip(model.generators, model.differential)
        ],
        "ranks": fmt_ranks(cert.rank_table()),
    }, digest


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratelliptic", description="Rational homotopy computations on cohomology rings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("model", help="staged minimal model")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("ranks", help="ranks of rational homotopy groups")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_ranks)

    s = sub.add_parser("elliptic", help="check the ellipticity inequalities")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--ranks", required=True, help="rk pi_2,rk pi_3,...")
    s.set_defaults(func=cmd_elliptic)

    s = sub.add_parser("classify", help="classify a cohomology ring")
    s.add_argument("file")
    s.add_argument("--dim", type=int, choices=(5, 6), required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("duality", help="Poincare duality check")
    s.add_argument("file")
    s.add_argument("--dim", type=int, required=True)
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("biquotient", help="torus actions on (S^3)^3")
    s.add_argument("--matrix", help="a1,a2,a3,b1,b2,b3,c1,c2,c3")
    s.add_argument("--family3", help="b1,c1,c2")
    s.add_argument("--obstruction", action="store_true")
    s.set_defaults(func=cmd_biquotient)

    s = sub.add_parser("borel", help="two-stage model for a complete intersection")
    s.add_argument("file")
    s.set_defaults(func=cmd_borel)
    return parser


def run_command(argv) -> tuple[dict | None, int, str | None]:
    """Run one invocation; returns ``(document, exit code, diagnostic)``."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_degree", None) is not None and args.max_degree < 2:
            raise UsageError("--max-degree must be at least 2")
        result, digest = args.func(args)
    except InputError as exc:
        return None, EXIT_INPUT, str(exc)
    except PreconditionError as exc:
        return None, EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}"
    except VerificationError as exc:
        return None, EXIT_VERIFICATION, f"{type(exc).__name__}: {exc}"
    if digest is None:
        digest = "sha256:" + hashlib.sha256(json.dumps(argv).encode()).hexdigest()
    doc = {
        "command": argv,
        "input_digest": digest,
        "result": result,
        "tool": {"name": "ratelliptic", "version": __version__},
    }
    return doc, EXIT_OK, None


def report_schema() -> dict:
    """The JSON Schema every report document validates against."""
    text = resources.files("ratelliptic").joinpath("data/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def render(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        doc, code, message = run_command(argv)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except RatEllipticError as exc:  # pragma: no cover - every subclass is mapped above
        doc, code, message = None, EXIT_VERIFICATION, str(exc)
    if doc is not None:
        sys.stdout.write(render(doc))
    if message:
        sys.stderr.write(f"ratelliptic: error: {message}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
