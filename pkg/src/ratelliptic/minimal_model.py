"""Stage-by-stage Sullivan minimal models of cohomology algebras with zero differential.

The target is always a :class:`QuotientAlgebra` ``(H, 0)``.  Stage ``k``
holds a free algebra on generators of degree ``<= k`` and a morphism into
``H``.  Passing to stage ``k+1`` adjoins

* closed generators ``u`` mapping onto a complement of the image of
  ``H^(k+1)(stage) -> H^(k+1)``, and
* generators ``v`` with ``dv = z`` for a basis ``z`` of the kernel of
  ``H^(k+2)(stage) -> H^(k+2)``; since ``H`` has zero differential they map
  to 0.

The number of generators of each degree is the rank of the corresponding
rational homotopy group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, NotSimplyConnected, OddGenerator, VerificationError
from .exact.linalg import QMatrix, extend_to_basis, image_complement, kernel_basis
from .graded import FreeAlgebra, Generator, GradedPoly, Presentation, QuotientAlgebra, build_quotient


class DGA:
    """Free graded-commutative algebra with a differential given on generators."""

    def __init__(self, algebra: FreeAlgebra, differential: Sequence[GradedPoly]):
        if len(differential) != algebra.ngens:
            raise ValueError("one differential per generator")
        self.algebra = algebra
        self.differential = tuple(
            dg if dg.algebra == algebra else dg.embed(algebra) for dg in differential
        )
        for g, dg in zip(algebra.generators, self.differential):
            if dg and dg.homogeneous_degree != g.degree + 1:
                raise ValueError(f"d({g.name}) is not of degree {g.degree + 1}")
        self._dmono: dict = {}

    def __repr__(self):
        return f"DGA({', '.join(f'd{n} = {dg.to_str()}' for n, dg in zip(self.algebra.names, self.differential))})"

    @property
    def generators(self) -> tuple:
        return self.algebra.generators

    def extend(self, generators: Sequence, differentials: Sequence[GradedPoly]) -> DGA:
        alg = self.algebra.extend(generators)
        old = [dg.embed(alg) for dg in self.differential]
        new = [dg if dg.algebra == alg else dg.embed(alg) for dg in differentials]
        return DGA(alg, old + new)

    def d_monomial(self, m) -> GradedPoly:
        if m in self._dmono:
            return self._dmono[m]
        alg = self.algebra
        out = alg.zero()
        prefix = alg.one()
        prefix_degree = 0
        for i, e in enumerate(m):
            if not e:
                continue
            power = alg.gen(i) ** (e - 1)
            # d(g^e) = e g^(e-1) dg for even g; odd g only ever has e == 1
            d_power = power * self.differential[i] * e
            rest = list(m)
            for j in range(i + 1):
                rest[j] = 0
            suffix = alg.monomial(tuple(rest))
            term = prefix * d_power * suffix
            out = out + (term if prefix_degree % 2 == 0 else -term)
            prefix = prefix * alg.gen(i) ** e
            prefix_degree += e * alg.degrees[i]
        self._dmono[m] = out
        return out

    def d(self, elem: GradedPoly) -> GradedPoly:
        out = self.algebra.zero()
        for m, c in elem.terms.items():
            out = out + self.d_monomial(m) * c
        return out

    def check_d_squared(self) -> bool:
        return all(not self.d(dg) for dg in self.differential)

    def is_minimal(self) -> bool:
        """Every differential lands in the decomposables."""
        return all(sum(m) >= 2 for dg in self.differential for m in dg.terms)

    def coboundary_matrix(self, degree: int) -> QMatrix:
        """Matrix of ``d`` from degree ``degree`` to ``degree + 1`` in monomial bases."""
        src = self.algebra.monomials(degree)
        dst = self.algebra.monomials(degree + 1)
        pos = {m: i for i, m in enumerate(dst)}
        cols = []
        for m in src:
            col = [Fraction(0)] * len(dst)
            for mm, c in self.d_monomial(m).terms.items():
                col[pos[mm]] += c
            cols.append(col)
        return QMatrix.from_columns(cols, nrows=len(dst))

    def cohomology(self, degree: int) -> list[GradedPoly]:
        """Cocycle representatives of a basis of ``H^degree``."""
        monos = self.algebra.monomials(degree)
        if not monos:
            return []
        cocycles = kernel_basis(self.coboundary_matrix(degree))
        if degree >= 1:
            prev = self.coboundary_matrix(degree - 1)
            boundaries = [prev.column(j) for j in range(prev.cols)]
        else:
            boundaries = []
        reps = extend_to_basis(boundaries, cocycles, len(monos))
        return [GradedPoly(self.algebra, dict(zip(monos, v))) for v in reps]


def leibniz_extend(dga: DGA, elem: GradedPoly) -> GradedPoly:
    return dga.d(elem)


@dataclass(frozen=True)
class RankTable:
    """Ranks of rational homotopy groups by degree."""

    ranks: dict = field(default_factory=dict)

    def __getitem__(self, r: int) -> int:
        return self.ranks.get(r, 0)

    def as_list(self, lo: int = 2, hi: int | None = None) -> list[int]:
        hi = max(self.ranks, default=lo) if hi is None else hi
        return [self[r] for r in range(lo, hi + 1)]

    def nonzero(self) -> dict:
        return {r: n for r, n in sorted(self.ranks.items()) if n}

    @classmethod
    def from_degrees(cls, degrees) -> RankTable:
        return cls(dict(sorted(Counter(degrees).items())))


class PartialModel:
    """Stage ``k`` of the construction: ``(mu_k, m_k)`` into a target with zero differential."""

    def __init__(self, stage: int, dga: DGA, morphism: Sequence[GradedPoly], target: QuotientAlgebra):
        self.stage = stage
        self.dga = dga
        self.morphism = tuple(morphism)
        self.target = target
        self._image_cache: dict = {}

    def __repr__(self):
        return f"PartialModel(stage={self.stage}, generators={self.dga.algebra.names})"

    @property
    def generators(self) -> tuple:
        return self.dga.generators

    def image_of_monomial(self, m) -> GradedPoly:
        if m in self._image_cache:
            return self._image_cache[m]
        q = self.target
        out = q.algebra.one()
        for i, e in enumerate(m):
            for _ in range(e):
                out = q.reduce(out * self.morphism[i])
                if not out:
                    break
            if not out:
                break
        self._image_cache[m] = out
        return out

    def apply(self, elem: GradedPoly) -> GradedPoly:
        out = self.target.algebra.zero()
        for m, c in elem.terms.items():
            img = self.image_of_monomial(m)
            if img:
                out = out + img * c
        return out

    def induced_matrix(self, reps: Sequence[GradedPoly], degree: int) -> QMatrix:
        """Columns: coordinates in ``H^degree`` of the images of ``reps``."""
        cols = [self.target.coordinates(self.apply(r), degree) for r in reps]
        return QMatrix.from_columns(cols, nrows=self.target.dim(degree))

    def check(self):
        dga = self.dga
        if not dga.check_d_squared():
            raise VerificationError("d o d != 0 on a generator")
        if not dga.is_minimal():
            raise VerificationError("differential leaves the decomposables")
        for g, dg in zip(dga.generators, dga.differential):
            if dg and self.apply(dg):
                raise VerificationError(f"morphism does not commute with d on {g.name}")

    def rank_table(self) -> RankTable:
        return RankTable.from_degrees(g.degree for g in self.generators)

    def named_generators(self) -> list[dict]:
        """Generator name, degree, differential and image, for reporting."""
        return [
            {
                "name": g.name,
                "degree": g.degree,
                "differential": dg.to_str(),
                "image": img.to_str(),
            }
            for g, dg, img in zip(self.generators, self.dga.differential, self.morphism)
        ]


def stage_cohomology(pm: PartialModel, degree: int) -> list[GradedPoly]:
    return pm.dga.cohomology(degree)


def init_stage2(target: QuotientAlgebra) -> PartialModel:
    """``mu_2`` is free on ``H^2`` with zero differential; ``m_2`` is the identity on ``H^2``."""
    if target.cap < 2:
        target = target.extended(2)
    if target.dim(0) != 1:
        raise NotSimplyConnected("H^0 is not one-dimensional")
    if target.dim(1) != 0:
        raise NotSimplyConnected(f"H^1 has dimension {target.dim(1)}")
    basis = target.basis_polys(2)
    gens = [Generator(f"u2_{i + 1}", 2) for i in range(len(basis))]
    alg = FreeAlgebra(gens)
    dga = DGA(alg, [alg.zero()] * len(gens))
    return PartialModel(2, dga, basis, target)


def next_stage(pm: PartialModel) -> PartialModel:
    k = pm.stage
    q = pm.target
    if q.cap < k + 2:
        raise CapExceeded(f"stage {k + 1} needs the target up to degree {k + 2}, cap is {q.cap}")
    dga = pm.dga
    alg = dga.algebra

    # closed generators onto a complement of the image in H^(k+1)
    reps = dga.cohomology(k + 1)
    images = pm.induced_matrix(reps, k + 1)
    complement = image_complement(images, q.dim(k + 1))
    u_images = [q.element(k + 1, y) for y in complement]

    # killing generators for the kernel in H^(k+2)
    reps2 = dga.cohomology(k + 2)
    kernel = kernel_basis(pm.induced_matrix(reps2, k + 2)) if reps2 else []
    z_list = []
    for coeffs in kernel:
        z = alg.zero()
        for c, r in zip(coeffs, reps2):
            if c:
                z = z + r * c
        z_list.append(z)

    new_gens = [Generator(f"u{k + 1}_{i + 1}", k + 1) for i in range(len(u_images))]
    new_gens += [Generator(f"v{k + 1}_{j + 1}", k + 1) for j in range(len(z_list))]
    ext = alg.extend(new_gens)
    diffs = [ext.zero()] * len(u_images) + [z.embed(ext) for z in z_list]
    new_dga = dga.extend(new_gens, diffs)
    morphism = pm.morphism + tuple(u_images) + (q.algebra.zero(),) * len(z_list)
    out = PartialModel(k + 1, new_dga, morphism, q)
    out.check()
    return out


def build_model(target, max_degree: int) -> tuple[PartialModel, RankTable]:
    """Run the construction through stage ``max_degree``.

    ``target`` may be a :class:`QuotientAlgebra` or a :class:`Presentation`;
    the quotient is rebuilt as far as the last stage needs.
    """
    if isinstance(target, Presentation):
        target = build_quotient(target, max(max_degree + 1, target.default_cap))
    elif target.cap < max_degree + 1:
        target = target.extended(max_degree + 1)
    pm = init_stage2(target)
    while pm.stage < max_degree:
        pm = next_stage(pm)
    return pm, pm.rank_table()


def hilbert_series_of_complete_intersection(gen_degrees, rel_degrees, cap: int) -> list[int]:
    """Coefficients of ``prod(1 - t^e) / prod(1 - t^d)`` up to ``t^cap``."""
    series = [0] * (cap + 1)
    series[0] = 1
    for e in rel_degrees:
        series = [series[i] - (series[i - e] if i >= e else 0) for i in range(cap + 1)]
    for d in gen_degrees:
        for i in range(d, cap + 1):
            series[i] += series[i - d]
    return series


@dataclass(frozen=True)
class FormalityCertificate:
    presentation: Presentation
    model: DGA
    regular: bool
    predicted_series: tuple
    actual_series: tuple

    def rank_table(self) -> RankTable:
        return RankTable.from_degrees(g.degree for g in self.model.generators)


def borel_model(p: Presentation) -> FormalityCertificate:
    """Two-stage model ``Q[x] (x) /\\(y)`` with ``dy_i = P_i`` and a regularity verdict.

    ``regular`` holds when the complete-intersection Hilbert series is
    nonnegative and agrees with the quotient's dimensions up to the cap.
    """
    odd = [g.name for g in p.generators if g.degree % 2]
    if odd:
        raise OddGenerator(f"odd-degree generators {', '.join(odd)} are not allowed")
    gen_degrees = [g.degree for g in p.generators]
    rel_degrees = [r.homogeneous_degree for r in p.relations]
    cap = p.default_cap
    if len(rel_degrees) >= len(gen_degrees):
        cap = max(cap, sum(rel_degrees) - sum(gen_degrees))
    predicted = hilbert_series_of_complete_intersection(gen_degrees, rel_degrees, cap)
    actual = build_quotient(p, cap).hilbert_coefficients()
    regular = all(c >= 0 for c in predicted) and predicted == actual

    taken = set(p.algebra.names)
    prefix = "y"
    while any(f"{prefix}{j + 1}" in taken for j in range(len(rel_degrees))):
        prefix += "_"
    new = [Generator(f"{prefix}{j + 1}", e - 1) for j, e in enumerate(rel_degrees)]
    alg = p.algebra.extend(new)
    diffs = [alg.zero()] * len(gen_degrees) + [r.embed(alg) for r in p.relations]
    model = DGA(alg, diffs)
    return FormalityCertificate(p, model, regular, tuple(predicted), tuple(actual))


def pi3_rank_dim5(b2: int, b3: int | None = None) -> int:
    """``rk pi_3 = b_3 + dim Sym^2(H^2)`` for a 5-manifold; ``b_3`` defaults to ``b_2``."""
    if b3 is None:
        b3 = b2
    return b3 + b2 * (b2 + 1) // 2
