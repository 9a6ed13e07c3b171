from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constants import DEFAULT_FIELD_DEGREE, NODE, ORBIT_SIZES, UNIPLANAR
from .ff2k import FieldCtx, FieldElement, field_new
from .geometry import ProjPoint, normalize, s4_orbit, sort_points
from .mpoly import MultiPoly, _raw, elementary_symmetric, parse
from .singular import NonIsolatedSingularities, critical_points_plane

logger = logging.getLogger(__name__)

Scalar = FieldElement | int


class GenericityError(ValueError):
    """A construction parameter violates one of its inequations."""


@dataclass(frozen=True)
class PredictedOrbit:
    label: str
    base: ProjPoint | None
    size: int

    @property
    def rational(self) -> bool:
        return self.base is not None


@dataclass(frozen=True)
class ExpectationCheck:
    missing: tuple[ProjPoint, ...]
    unexpected: tuple[ProjPoint, ...]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unexpected


@dataclass
class FamilyExpectation:
    """Predicted singular points of a family member.

    `points` holds the predicted points rational over the ambient field;
    `total` counts them over the algebraic closure.
    """

    name: str
    points: list[ProjPoint] = field(default_factory=list)
    total: int | None = None
    orbits: list[PredictedOrbit] = field(default_factory=list)
    cone: str | None = None
    reducible: bool = False
    infinite: bool = False
    strata: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return self.reducible or self.infinite

    @property
    def by_defdeg(self) -> dict[int, int]:
        return dict(sorted(Counter(p.defdeg for p in self.points).items()))

    def restricted(self, subfield: int | None) -> list[ProjPoint]:
        if subfield is None:
            return list(self.points)
        return [p for p in self.points if subfield % p.defdeg == 0]

    def compare(self, found: Iterable[ProjPoint], subfield: int | None = None) -> ExpectationCheck:
        want = set(self.restricted(subfield))
        got = set(found)
        return ExpectationCheck(tuple(sort_points(want - got)), tuple(sort_points(got - want)))


def _ctx_of(values: Sequence[Scalar], ctx: FieldCtx | None) -> FieldCtx:
    for v in values:
        if isinstance(v, FieldElement):
            return v.ctx
    return ctx or field_new(DEFAULT_FIELD_DEGREE)


def _var(ctx: FieldCtx, i: int, nvars: int = 4) -> MultiPoly:
    return MultiPoly.variable(ctx, nvars, i)


# --- cubic and triple-point examples ---------------------------------------------------

def cayley_cubic(ctx: FieldCtx | None = None) -> MultiPoly:
    return elementary_symmetric(3, ctx or field_new(DEFAULT_FIELD_DEGREE))


def cayley_expectation(ctx: FieldCtx) -> FamilyExpectation:
    points = [ProjPoint(tuple(int(i == j) for j in range(4)), ctx) for i in range(4)]
    return FamilyExpectation("cayley", sort_points(points), 4, cone=NODE)


def triple_point_example(ctx: FieldCtx | None = None) -> tuple[MultiPoly, FamilyExpectation]:
    """x4*G + B with G = x1x2x3 and B = x1^4+x2^4+x3^4 + x1x2x3(x1+x2+x3).

    Besides the triple point (0:0:0:1) the surface is singular at the three
    points with x4 = 0 where one coordinate vanishes and the other two agree.
    """
    ctx = ctx or field_new(DEFAULT_FIELD_DEGREE)
    F = parse("x4*x1*x2*x3 + x1^4 + x2^4 + x3^4 + x1*x2*x3*(x1 + x2 + x3)", ctx, homogeneous=True)
    raw = [(0, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 0)]
    points = sort_points(ProjPoint(v, ctx) for v in raw)
    return F, FamilyExpectation("triple", points, len(points))


# --- inseparable double covers --------------------------------------------------------

def step4_linear_factors(a1: Scalar, a2: Scalar, a3: Scalar, ctx: FieldCtx | None = None) -> list[MultiPoly]:
    """The four lines y3+x1, y3+x2, y3, y3+x1+x2 with y3 = a1x1 + a2x2 + a3x3, in 3 variables."""
    ctx = _ctx_of((a1, a2, a3), ctx)
    y3 = MultiPoly.linear_form(ctx, [a1, a2, a3])
    x1, x2 = _var(ctx, 0, 3), _var(ctx, 1, 3)
    return [y3 + x1, y3 + x2, y3, y3 + x1 + x2]


def _product(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = list(polys)
    acc = MultiPoly.constant(polys[0].ctx, polys[0].nvars, 1)
    for p in polys:
        acc = acc * p
    return acc


def inseparable_step4(a1: Scalar, a2: Scalar, a3: Scalar,
                      ctx: FieldCtx | None = None) -> tuple[MultiPoly, FamilyExpectation]:
    """z^2(x1x2 + x3^2) + B(x) with B the product of `step4_linear_factors`; z is x4.

    Raises GenericityError naming the first inequation that fails.
    """
    ctx = _ctx_of((a1, a2, a3), ctx)
    a1, a2, a3 = (_raw(ctx, a) for a in (a1, a2, a3))
    if a3 in (0, 1):
        raise GenericityError("a3 must not be 0 or 1")
    div, sq = ctx.div, ctx.square

    B3 = _product(step4_linear_factors(a1, a2, a3, ctx))
    Q3 = _var(ctx, 0, 3) * _var(ctx, 1, 3) + _var(ctx, 2, 3) ** 2
    z = _var(ctx, 3)
    F = z ** 2 * Q3.add_variable(3) + B3.add_variable(3)

    lead = sq(a3) ^ 1
    pairs = [
        ("b", (0, 1), sq(a2) ^ a2, (a2, 1 ^ a2)),
        ("c", (1, 0), sq(a1) ^ a1, (a1, 1 ^ a1)),
        ("d", (1, 1), sq(a1) ^ sq(a2) ^ a1 ^ a2 ^ 1, (a1 ^ a2, 1 ^ a1 ^ a2)),
    ]
    points = [ProjPoint((0, 0, 0, 1), ctx), normalize([0, 0, 1, sq(a3)], ctx)]
    for _, head, _, forbidden in pairs:
        # where two of the four lines of B meet
        points.extend(normalize([*head, div(f, a3), 0], ctx) for f in forbidden)

    total = len(points)
    for name, head, k, forbidden in pairs:
        roots = ctx.solve_quadratic(div(a3, lead), div(k, lead))
        for t in roots:
            if t in {div(f, a3) for f in forbidden}:
                raise GenericityError(f"root {name} = {ctx.format(t)} hits a forbidden value")
        total += 2
        if not roots:
            continue
        for t in roots:
            x = (*head, t)
            q = Q3.evaluate(x).value
            if not q:
                raise GenericityError(f"root {name} = {ctx.format(t)} lies on the conic x1x2 + x3^2")
            points.append(normalize([*x, ctx.sqrt(div(B3.evaluate(x).value, q))], ctx))
    return F, FamilyExpectation("step4", sort_points(points), total)


def f16_instance(ctx: FieldCtx | None = None) -> tuple[MultiPoly, FamilyExpectation]:
    """The inseparable 14-point quartic at a3 = omega, a1 = a2 = omega^2."""
    ctx = ctx or field_new(DEFAULT_FIELD_DEGREE)
    if ctx.m % 4:
        raise ValueError(f"the GF(16) instance needs GF(16) inside {ctx.name}")
    w = ctx.omega
    w2 = ctx.square(w)
    F, expectation = inseparable_step4(w2, w2, w, ctx)
    expectation.name = "f16"
    return F, expectation


def schuett_quartic(B: MultiPoly, ell: MultiPoly) -> tuple[MultiPoly, FamilyExpectation]:
    """w^4 + w^2 ell^2 + B(x) with w = x4, for a plane form B and a linear form ell in x1..x3."""
    if B.nvars != 3 or ell.nvars != 3 or ell.degree != 1 or not ell.is_homogeneous():
        raise ValueError("schuett_quartic needs a plane form B and a linear form ell in 3 variables")
    ctx = B.ctx
    try:
        critical = critical_points_plane(B)
    except NonIsolatedSingularities as exc:
        raise GenericityError(f"the critical locus of B is not finite: {exc}") from None
    points = []
    for c in critical:
        e = ell.evaluate(c.values).value
        if not e:
            raise GenericityError(f"critical point {c} lies on the line ell = 0")
        for W in ctx.solve_quadratic(ctx.square(e), B.evaluate(c.values).value):
            points.append(normalize([*c.values, ctx.sqrt(W)], ctx))
    w = _var(ctx, 3)
    F = w ** 4 + w ** 2 * ell.add_variable(3) ** 2 + B.add_variable(3)
    return F, FamilyExpectation("schuett", sort_points(points), 2 * len(critical))


def purely_inseparable_quartic(B: MultiPoly) -> tuple[MultiPoly, FamilyExpectation]:
    """z^4 + B(x): one singular point above every critical point of B."""
    if B.nvars != 3:
        raise ValueError("purely_inseparable_quartic needs a plane form in 3 variables")
    ctx = B.ctx
    try:
        critical = critical_points_plane(B)
    except NonIsolatedSingularities as exc:
        raise GenericityError(f"the critical locus of B is not finite: {exc}") from None
    points = [normalize([*c.values, ctx.sqrt(ctx.sqrt(B.evaluate(c.values).value))], ctx) for c in critical]
    F = _var(ctx, 3) ** 4 + B.add_variable(3)
    return F, FamilyExpectation("inseparable", sort_points(points), len(points))


def klein(ctx: FieldCtx | None = None) -> MultiPoly:
    return parse("x1^3*x2 + x2^3*x3 + x3^3*x1", ctx or field_new(DEFAULT_FIELD_DEGREE), nvars=3)


def klein_critical_points(ctx: FieldCtx) -> list[ProjPoint]:
    """(1 : e : e^5) for the seventh roots of unity e lying in the field."""
    roots = [1]
    if ctx.m % 3 == 0:
        step = ctx.order // 7
        roots = [int(ctx.exp[k * step]) for k in range(7)]
    return sort_points(ProjPoint((1, e, ctx.pow(e, 5)), ctx) for e in roots)


# --- symmetric quartics ---------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricFamilySpec:
    """a1 s1^4 + a2 s1^2 s2 + a3 s1 s3 + a4 s4 + beta s2^2."""

    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    beta: FieldElement

    def __post_init__(self):
        values = self.values
        ctx = self.a1.ctx
        for v in (self.a2, self.a3, self.a4, self.beta):
            _raw(ctx, v)
        if not any(values):
            raise ValueError("all five coefficients are zero")

    @classmethod
    def of(cls, ctx: FieldCtx, a1: Scalar, a2: Scalar, a3: Scalar, a4: Scalar, beta: Scalar) -> "SymmetricFamilySpec":
        return cls(*(FieldElement(_raw(ctx, v), ctx) for v in (a1, a2, a3, a4, beta)))

    @property
    def ctx(self) -> FieldCtx:
        return self.a1.ctx

    @property
    def values(self) -> tuple[int, int, int, int, int]:
        return self.a1.value, self.a2.value, self.a3.value, self.a4.value, self.beta.value

    def __str__(self) -> str:
        return "(" + ", ".join(self.ctx.format(v) for v in self.values) + ")"


def symmetric_quartic(spec: SymmetricFamilySpec) -> MultiPoly:
    ctx = spec.ctx
    s1, s2, s3, s4 = (elementary_symmetric(i, ctx) for i in range(1, 5))
    a1, a2, a3, a4, beta = spec.values
    return (s1 ** 4).scale(a1) + (s1 ** 2 * s2).scale(a2) + (s1 * s3).scale(a3) + s4.scale(a4) \
        + (s2 ** 2).scale(beta)


def symmetric_strata(spec: SymmetricFamilySpec) -> dict[str, bool]:
    ctx = spec.ctx
    a1, a2, a3, a4, beta = spec.values
    mul = ctx.mul
    return {
        "P(6)": beta == 0,
        "P(1)": a4 == 0,
        "P(12)": (mul(a2, a4) ^ ctx.square(a3)) == 0,
        "P(4)": (mul(a2, beta ^ a2 ^ a3) ^ mul(a1, a4)) == 0,
    }


def symmetric_fz(spec: SymmetricFamilySpec, point: ProjPoint | Sequence[Scalar]) -> list[FieldElement]:
    """Coefficients (low to high) of the cubic whose roots are the coordinates of a singular point."""
    ctx = spec.ctx
    values = [_raw(ctx, v) for v in getattr(point, "values", point)]
    s1, s2, s3, s4 = (elementary_symmetric(i, ctx).evaluate(values).value for i in range(1, 5))
    a1, a2, a3, a4, _ = spec.values
    mul, sq = ctx.mul, ctx.square
    coeffs = [
        mul(a4, s4),
        mul(a2, mul(s1, sq(s1))) ^ mul(a3, s3 ^ mul(s1, s2)),
        mul(a2 ^ a3, sq(s1)),
        mul(a3, s1),
    ]
    return [FieldElement(c, ctx) for c in coeffs]


def _orbit(label: str, raw: Sequence[int] | None, size: int, ctx: FieldCtx) -> PredictedOrbit:
    if raw is None:
        return PredictedOrbit(label, None, size)
    return PredictedOrbit(label, normalize(raw, ctx), size)


def classify_symmetric(spec: SymmetricFamilySpec) -> FamilyExpectation:
    """Predicted singular orbits of a symmetric quartic, with degeneracy flags."""
    ctx = spec.ctx
    a1, a2, a3, a4, beta = spec.values
    mul, div, sq, sqrt = ctx.mul, ctx.div, ctx.square, ctx.sqrt
    out = FamilyExpectation(f"symmetric{spec}", strata=symmetric_strata(spec))

    if a3 == 0 and a4 == 0:
        out.infinite = True
        out.notes.append("a3 = a4 = 0: singular along s1 = s2 = 0")
    if a4 == 0 and beta == 0:
        out.reducible = True
        out.notes.append("a4 = beta = 0: s1 divides F")
    if a1 == a2 == a3 == beta == 0:
        out.reducible = True
        out.notes.append("F is a multiple of s4")
    if a1 == a2 == a4 == 0 and beta == a3:
        out.infinite = True
        out.notes.append("every (1:1:1:b) is singular")
    z = div(a3, a2) if a2 else None
    if z and a4 == mul(sq(z), a2) and beta == 0:
        rest = mul(a1, sq(sq(z))) ^ mul(a2, mul(sq(z), 1 ^ z))
        if rest == 0:
            out.infinite = True
            out.notes.append("every (1:1:b:c) with b + c = a3/a2 is singular")
    if out.degenerate:
        return out

    orbits = out.orbits
    if a4 == 0:
        orbits.append(_orbit("(1,1,1,1)", (1, 1, 1, 1), 1, ctx))
    if beta == 0:
        orbits.append(_orbit("(0,0,1,1)", (0, 0, 1, 1), 6, ctx))
    if a1 == 0 and a2 == 0:
        orbits.append(_orbit("(0,0,0,1)", (0, 0, 0, 1), 4, ctx))

    s = None
    if a2:
        if a4:
            s = sqrt(div(a4, a2))
    elif a4 == 0 and a1:
        s = sqrt(div(beta ^ a3, a1)) or None
    if s and a4 == mul(a2, sq(s)) and beta == mul(a1, sq(s)) ^ a2 ^ a3:
        orbits.append(_orbit("(1,1,1,b)", (1, 1, 1, 1 ^ s), 4, ctx))

    if a2 == 0 and a3 == 0 and a1 and beta:
        roots = ctx.solve_quadratic(div(sqrt(beta), sqrt(a1)), 1)
        base = (0, 0, 1, roots[0]) if roots else None
        orbits.append(_orbit("(0,0,1,b)", base, 12, ctx))

    if z and a4 == mul(sq(z), a2):
        rest = mul(a1, sq(sq(z))) ^ mul(a2, mul(sq(z), 1 ^ z))
        if z != 1 and beta == rest:
            orbits.append(_orbit("(0,1,1,z)", (0, 1, 1, z), 12, ctx))
        if beta:
            p = 1 ^ sqrt(div(rest, beta))
            if p and (1 ^ z ^ p):
                roots = ctx.solve_quadratic(z, p)
                base = (1, 1, roots[0], roots[1]) if len(roots) == 2 else None
                orbits.append(_orbit("(1,1,b,c)", base, 12, ctx))

    points: list[ProjPoint] = []
    for orbit in orbits:
        if orbit.base is not None:
            points.extend(s4_orbit(orbit.base))
    out.points = sort_points(points)
    out.total = sum(o.size for o in orbits)
    if out.total not in ORBIT_SIZES:
        logger.warning("predicted %d singular points for %s", out.total, spec)
    return out


def pencil(c: Scalar, ctx: FieldCtx | None = None) -> tuple[MultiPoly, FamilyExpectation]:
    """c s1 s3 + s4."""
    ctx = _ctx_of((c,), ctx)
    spec = SymmetricFamilySpec.of(ctx, 0, 0, c, 1, 0)
    expectation = classify_symmetric(spec)
    if not expectation.degenerate:
        expectation.cone = NODE
    expectation.name = f"pencil({ctx.format(_raw(ctx, c))})"
    return symmetric_quartic(spec), expectation


def d4(beta: Scalar, ctx: FieldCtx | None = None) -> tuple[MultiPoly, FamilyExpectation]:
    """s4 + beta s2^2."""
    ctx = _ctx_of((beta,), ctx)
    if not _raw(ctx, beta):
        raise GenericityError("beta must be nonzero")
    spec = SymmetricFamilySpec.of(ctx, 0, 0, 0, 1, beta)
    expectation = classify_symmetric(spec)
    expectation.cone = UNIPLANAR
    expectation.name = f"d4({ctx.format(_raw(ctx, beta))})"
    return symmetric_quartic(spec), expectation
