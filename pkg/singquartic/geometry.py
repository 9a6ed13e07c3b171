from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .constants import DOUBLE_LINE, SMOOTH_CONIC, TWO_LINES
from .ff2k import FieldCtx, FieldElement
from .mpoly import MultiPoly, _raw

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class ProjPoint:
    values: tuple[int, ...]
    ctx: FieldCtx

    @property
    def coords(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(v, self.ctx) for v in self.values)

    @property
    def defdeg(self) -> int:
        return math.lcm(*(self.ctx.subfield_degree(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return format_point(self)

    def to_json(self) -> list[dict[str, object]]:
        return [{"value": v, "pretty": self.ctx.format(v)} for v in self.values]


def normalize(raw: Sequence[int | FieldElement], ctx: FieldCtx | None = None) -> ProjPoint:
    if ctx is None:
        ctx = next(v.ctx for v in raw if isinstance(v, FieldElement))
    vals = [_raw(ctx, v) for v in raw]
    lead = next((v for v in vals if v), 0)
    if not lead:
        raise ValueError("the zero vector is not a projective point")
    scale = ctx.inv(lead)
    return ProjPoint(tuple(ctx.mul(v, scale) for v in vals), ctx)


def point_key(p: ProjPoint) -> tuple[int, ...]:
    return p.values


def sort_points(points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return sorted(set(points), key=point_key)


def format_point(p: ProjPoint) -> str:
    return "(" + " : ".join(p.ctx.format(v) for v in p.values) + ")"


def s4_orbit(p: ProjPoint) -> list[ProjPoint]:
    return sort_points(normalize([p.values[i] for i in perm], p.ctx)
                       for perm in itertools.permutations(range(len(p.values))))


def stabilizer_size(p: ProjPoint) -> int:
    return sum(1 for perm in itertools.permutations(range(len(p.values)))
               if normalize([p.values[i] for i in perm], p.ctx) == p)


def apply_matrix(matrix: Sequence[Sequence[int]], p: ProjPoint) -> ProjPoint:
    return normalize(p.ctx.mat_vec([list(r) for r in matrix], p.values), p.ctx)


def projective_points(ctx: FieldCtx, n: int, subfield: int | None = None) -> list[ProjPoint]:
    """All points of P^(n-1) over GF(2^subfield), first nonzero coordinate 1."""
    elems = ctx.subfield_elements(subfield or ctx.m)
    out = []
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            out.append(ProjPoint((0,) * lead + (1,) + tuple(tail), ctx))
    return out


# --- conics in characteristic 2 ----------------------------------------------------

@dataclass(frozen=True)
class ConicClass:
    kind: str
    transform: Matrix | None
    inverse: Matrix | None
    strange_point: ProjPoint | None

    @property
    def normal_form(self) -> str:
        return {DOUBLE_LINE: "x1^2", TWO_LINES: "x1*x2", SMOOTH_CONIC: "x1*x2 + x3^2"}[self.kind]


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in r) for r in rows)


def _basis_with_last(ctx: FieldCtx, v: Sequence[int]) -> list[list[int]]:
    """Columns e_i (i != k) then v, as a row-major matrix; v_k is the first nonzero entry."""
    k = next(i for i, x in enumerate(v) if x)
    cols = [[int(i == j) for i in range(len(v))] for j in range(len(v)) if j != k] + [list(v)]
    return [[cols[c][r] for c in range(len(v))] for r in range(len(v))]


def conic_normal_form(Q: MultiPoly) -> ConicClass:
    if Q.is_zero():
        raise ValueError("the zero polynomial is not a conic")
    if Q.nvars != 3 or not Q.is_homogeneous() or Q.degree != 2:
        raise ValueError("conic_normal_form needs a quadratic form in 3 variables")
    ctx = Q.ctx
    a12 = Q.terms.get((1, 1, 0), 0)
    a13 = Q.terms.get((1, 0, 1), 0)
    a23 = Q.terms.get((0, 1, 1), 0)

    if not (a12 or a13 or a23):
        ell = [ctx.sqrt(Q.terms.get(tuple(2 * int(i == j) for j in range(3)), 0)) for i in range(3)]
        k = next(i for i, c in enumerate(ell) if c)
        rows = [ell] + [[int(i == j) for j in range(3)] for i in range(3) if i != k]
        return ConicClass(DOUBLE_LINE, _as_matrix(ctx.mat_inv(rows)), _as_matrix(rows), None)

    strange = [a23, a13, a12]
    kind = TWO_LINES if not Q.evaluate(strange) else SMOOTH_CONIC
    m1 = _basis_with_last(ctx, strange)
    q1 = Q.linear_substitute(m1)
    alpha = q1.terms.get((2, 0, 0), 0)
    beta = q1.terms.get((0, 2, 0), 0)
    gamma = q1.terms.get((0, 0, 2), 0)
    delta = q1.terms.get((1, 1, 0), 0)

    if kind == SMOOTH_CONIC:
        n_inv = [[delta, 0, 0], [0, 1, 0], [ctx.sqrt(alpha), ctx.sqrt(beta), ctx.sqrt(gamma)]]
    elif alpha == 0:
        n_inv = [[0, 1, 0], [delta, beta, 0], [0, 0, 1]]
    else:
        roots = ctx.solve_quadratic(ctx.div(delta, alpha), ctx.div(beta, alpha))
        if len(roots) != 2:
            # the two lines are conjugate over a quadratic extension
            return ConicClass(kind, None, None, normalize(strange, ctx))
        r1, r2 = roots
        n_inv = [[alpha, ctx.mul(alpha, r1), 0], [1, r2, 0], [0, 0, 1]]
    transform = ctx.mat_mul(m1, ctx.mat_inv(n_inv))
    inverse = ctx.mat_mul(n_inv, ctx.mat_inv(m1))
    return ConicClass(kind, _as_matrix(transform), _as_matrix(inverse), normalize(strange, ctx))
