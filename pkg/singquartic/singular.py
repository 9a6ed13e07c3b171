from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
import pandas as pd

from .constants import (
    CONE_NAMES,
    DEFAULT_D_MAX,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    INCONCLUSIVE,
    LOCAL_CHARTS,
    MIN_GAUSS_RESIDUAL,
    NON_NORMAL,
    NORMAL_SING_BOUND,
    PROBABLY_NORMAL,
    RANDOM_LINES,
    SCHEMA_VERSION,
    SLICE_BLOCK,
)
from .ff2k import FieldCtx
from .geometry import ProjPoint, apply_matrix, conic_normal_form, normalize, projective_points, sort_points
from .mpoly import (
    MultiPoly,
    NotSingularError,
    _ugcd,
    format_poly,
    monomials,
    roots_raw,
    singular_at,
    taylor_at_singular_point,
)

logger = logging.getLogger(__name__)

__all__ = [
    "NonIsolatedSingularities",
    "NotSingularError",
    "LocalMultiplicity",
    "SingularPointRecord",
    "SingularReport",
    "analyze",
    "brute_force_oracle",
    "classify_point",
    "common_zeros_plane",
    "critical_points_plane",
    "degree_formula_report",
    "gauss_plane_test",
    "is_inseparable_projection",
    "local_multiplicity",
    "monoid_bound",
    "normality_heuristic",
    "singular_points",
]


class NonIsolatedSingularities(RuntimeError):
    def __init__(self, message: str, points: Iterable[ProjPoint] = (), gradient_zero: bool = False):
        super().__init__(message)
        self.points = list(points)
        self.gradient_zero = gradient_zero


def monoid_bound(d: int) -> int:
    """Most singular points of a normal degree-d surface with a point of multiplicity d-1."""
    return 1 + d * (d - 1) // 2


def _check_surface(F: MultiPoly) -> None:
    if F.nvars != 4:
        raise ValueError(f"surface equation needs 4 variables, got {F.nvars}")
    if F.is_zero():
        raise ValueError("the zero polynomial does not define a surface")
    if not F.is_homogeneous():
        raise ValueError("surface equation is not homogeneous")
    if F.degree > 4:
        raise ValueError(f"degree {F.degree} surfaces are not supported")


def _run_units(units: Sequence, work: Callable, threads: int, limit: int | None, found: list) -> None:
    """Runs work(unit) and extends found; stops early once found exceeds limit."""
    def check():
        if limit is not None and len(found) > limit:
            raise NonIsolatedSingularities(f"more than {limit} singular points", found)

    if threads <= 1 or len(units) <= 1:
        for unit in units:
            found.extend(work(unit))
            check()
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        try:
            for result in pool.map(work, units):
                found.extend(result)
                check()
        except BaseException:
            pool.shutdown(wait=False, cancel_futures=True)
            raise


# --- enumeration over P^3 ---------------------------------------------------------------

def _pivot_change(F: MultiPoly, seed: int = DEFAULT_SEED) -> tuple[tuple[int, ...], ...]:
    """A GF(2) coordinate change after which x4 occurs with exponent 3 (or 1 below degree 3)."""
    want = 3 if F.degree >= 3 else 1

    def ok(matrix) -> bool:
        return bool(F.linear_substitute(matrix).coefficient_of(3, want))

    identity = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    candidates = [identity]
    for i in range(3):
        perm = list(range(4))
        perm[i], perm[3] = perm[3], perm[i]
        candidates.append(tuple(tuple(int(perm[r] == c) for c in range(4)) for r in range(4)))
    for matrix in candidates:
        if ok(matrix):
            return matrix
    rng = np.random.default_rng(seed)
    for _ in range(64):
        matrix = tuple(tuple(int(v) for v in row) for row in rng.integers(0, 2, size=(4, 4)))
        try:
            if ok(matrix):
                return matrix
        except ValueError:
            continue
    logger.info("no coordinate change isolates x4; every slice uses the univariate fallback")
    return identity


@dataclass(frozen=True)
class _Kernel:
    G: MultiPoly
    c1: MultiPoly
    c3: MultiPoly
    elems: np.ndarray
    subfield: int
    seed: int

    @property
    def ctx(self) -> FieldCtx:
        return self.G.ctx

    def required(self, pinned: int) -> list[MultiPoly]:
        skip = {3}
        if self.G.degree % 2 == 0:
            skip.add(pinned)
        return [self.G.partial(i) for i in range(4) if i not in skip]

    def scan(self, y1: np.ndarray, y2: np.ndarray, y3: np.ndarray, pinned: int) -> list[tuple[int, ...]]:
        ctx = self.ctx
        y1, y2, y3 = np.broadcast_arrays(np.asarray(y1, dtype=np.int64), np.asarray(y2, dtype=np.int64),
                                         np.asarray(y3, dtype=np.int64))
        v1 = self.c1.evaluate_many([y1, y2, y3, 0])
        v3 = self.c3.evaluate_many([y1, y2, y3, 0])
        out: list[tuple[int, ...]] = []

        has = np.flatnonzero(v3 != 0)
        if has.size:
            r = ctx.vsqrt(ctx.vdiv(v1[has], v3[has]))
            if self.subfield < ctx.m:
                keep = np.isin(r, self.elems)
                has, r = has[keep], r[keep]
            cols = [y1[has], y2[has], y3[has], r]
            alive = self.G.evaluate_many(cols) == 0
            for partial in self.required(pinned):
                if not alive.any():
                    break
                idx = np.flatnonzero(alive)
                alive[idx] = partial.evaluate_many([c[idx] for c in cols]) == 0
            for i in np.flatnonzero(alive):
                out.append((int(cols[0][i]), int(cols[1][i]), int(cols[2][i]), int(cols[3][i])))

        for i in np.flatnonzero((v3 == 0) & (v1 == 0)):
            out.extend(self._fallback(int(y1[i]), int(y2[i]), int(y3[i]), pinned))
        return out

    def _fallback(self, a: int, b: int, c: int, pinned: int) -> list[tuple[int, ...]]:
        fixed = {0: a, 1: b, 2: c}
        g: list[int] = []
        for poly in [self.G] + self.required(pinned):
            g = _ugcd(self.ctx, g, poly.specialize(fixed).univariate(3))
        if not g:
            raise NonIsolatedSingularities(f"the line ({a}, {b}, {c}, *) is singular")
        return [(a, b, c, r) for r in roots_raw(self.ctx, g, self.seed, self.subfield)]


def singular_points(F: MultiPoly, *, subfield: int | None = None, limit: int | None = None,
                    threads: int = DEFAULT_THREADS, seed: int = DEFAULT_SEED) -> list[ProjPoint]:
    """Points of P^3 over GF(2^subfield) where F and its four partials vanish."""
    _check_surface(F)
    ctx = F.ctx
    k = subfield or ctx.m
    if ctx.m % k:
        raise ValueError(f"GF(2^{k}) is not a subfield of {ctx.name}")
    if all(p.is_zero() for p in F.gradient()):
        raise NonIsolatedSingularities("the gradient vanishes identically", gradient_zero=True)

    matrix = _pivot_change(F, seed)
    G = F.linear_substitute(matrix)
    elems = np.array(ctx.subfield_elements(k), dtype=np.int64)
    kernel = _Kernel(G, G.coefficient_of(3, 1), G.coefficient_of(3, 3), elems, k, seed)
    s = elems.size
    found: list[tuple[int, ...]] = []

    block = max(1, SLICE_BLOCK // s)
    units = [elems[i:i + block] for i in range(0, s, block)]
    logger.info("scanning chart x1=1 over GF(2^%d) in %d units", k, len(units))

    def chart1(outer: np.ndarray) -> list[tuple[int, ...]]:
        return kernel.scan(1, np.repeat(outer, s), np.tile(elems, outer.size), pinned=0)

    def back(values: Iterable[tuple[int, ...]]) -> list[ProjPoint]:
        return sort_points(apply_matrix(matrix, ProjPoint(v, ctx)) for v in values)

    try:
        _run_units(units, chart1, threads, limit, found)
        found.extend(kernel.scan(0, 1, elems, pinned=1))
        found.extend(kernel.scan(0, 0, np.array([1]), pinned=2))
    except NonIsolatedSingularities as exc:
        raise NonIsolatedSingularities(str(exc), back(found)) from None
    if singular_at(G, (0, 0, 0, 1)):
        found.append((0, 0, 0, 1))
    if limit is not None and len(found) > limit:
        raise NonIsolatedSingularities(f"more than {limit} singular points", back(found))
    return back(found)


def brute_force_oracle(F: MultiPoly, k: int) -> list[ProjPoint]:
    """Singular points over GF(2^k) by checking every point; k <= 4."""
    if (1 << k) > 16:
        raise ValueError("the oracle scans GF(2^k) with 2^k <= 16 only")
    return sort_points(p for p in projective_points(F.ctx, 4, k) if singular_at(F, p.values))


# --- plane curves ----------------------------------------------------------------------

def _plane_scan(polys: Sequence[MultiPoly], ctx: FieldCtx, subfield: int | None, threads: int) -> list[ProjPoint]:
    k = subfield or ctx.m
    elems = np.array(ctx.subfield_elements(k), dtype=np.int64)
    s = elems.size

    def zeros(y1, y2, y3) -> list[ProjPoint]:
        y1, y2, y3 = np.broadcast_arrays(np.asarray(y1, dtype=np.int64), np.asarray(y2, dtype=np.int64),
                                         np.asarray(y3, dtype=np.int64))
        alive = np.ones(y1.shape, dtype=bool)
        for p in polys:
            idx = np.flatnonzero(alive)
            if not idx.size:
                break
            alive[idx] = p.evaluate_many([y1[idx], y2[idx], y3[idx]]) == 0
        return [ProjPoint((int(y1[i]), int(y2[i]), int(y3[i])), ctx) for i in np.flatnonzero(alive)]

    block = max(1, SLICE_BLOCK // s)
    units = [elems[i:i + block] for i in range(0, s, block)]
    found: list[ProjPoint] = []
    _run_units(units, lambda outer: zeros(1, np.repeat(outer, s), np.tile(elems, outer.size)), threads, None, found)
    found.extend(zeros(0, 1, elems))
    found.extend(zeros(0, 0, np.array([1])))
    return sort_points(found)


def critical_points_plane(B: MultiPoly, *, subfield: int | None = None,
                          threads: int = DEFAULT_THREADS) -> list[ProjPoint]:
    """Points of P^2 where the three partials of B vanish."""
    if B.nvars != 3 or B.is_zero():
        raise ValueError("critical_points_plane needs a nonzero polynomial in 3 variables")
    grad = [p for p in B.gradient() if p]
    if not grad:
        raise NonIsolatedSingularities("every point is critical: the gradient vanishes identically",
                                       gradient_zero=True)
    return _plane_scan(grad, B.ctx, subfield, threads)


def common_zeros_plane(polys: Sequence[MultiPoly], *, subfield: int | None = None,
                       threads: int = DEFAULT_THREADS) -> list[ProjPoint]:
    if not polys:
        raise ValueError("common_zeros_plane needs at least one polynomial")
    if any(p.nvars != 3 for p in polys):
        raise ValueError("common_zeros_plane works in 3 variables")
    return _plane_scan([p for p in polys if p], polys[0].ctx, subfield, threads)


# --- local invariants ---------------------------------------------------------------------

@dataclass(frozen=True)
class LocalMultiplicity:
    value: int | None
    stab_degree: int | None
    seed: int
    dims: tuple[int, ...] = ()

    @property
    def inconclusive(self) -> bool:
        return self.value is None


def _random_chart(F: MultiPoly, P: ProjPoint, rng: np.random.Generator) -> tuple[tuple[int, ...], ...]:
    ctx = F.ctx
    while True:
        cols = [[int(v) for v in rng.integers(0, ctx.q, size=4)] for _ in range(3)] + [list(P.values)]
        matrix = tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))
        try:
            ctx.mat_inv([list(r) for r in matrix])
        except ValueError:
            continue
        return matrix


def _truncated_dimension(gens: Sequence[MultiPoly], D: int) -> int:
    """dim of polynomials of degree < D modulo the ideal (gens) truncated below degree D."""
    ctx = gens[0].ctx
    cols = [m for d in range(D) for m in monomials(3, d)]
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        low = min(sum(e) for e in g.terms)
        for d in range(D - low):
            for mono in monomials(3, d):
                row = np.zeros(len(cols), dtype=np.int64)
                for e, c in g.terms.items():
                    t = (e[0] + mono[0], e[1] + mono[1], e[2] + mono[2])
                    if sum(t) < D:
                        row[index[t]] ^= c
                if row.any():
                    rows.append(row)
    if not rows:
        return len(cols)
    return len(cols) - ctx.rank(np.array(rows))


def _chart_length(F: MultiPoly, matrix, d_max: int) -> tuple[int | None, int | None, tuple[int, ...]]:
    G = F.linear_substitute(matrix)
    gens = [h.dehomogenize(3) for h in (G, G.partial(0), G.partial(1))]
    gens = [g for g in gens if g]
    dims = [_truncated_dimension(gens, 2)]
    for D in range(3, d_max + 2):
        dims.append(_truncated_dimension(gens, D))
        if dims[-1] == dims[-2]:
            return dims[-1], D - 1, tuple(dims)
    return None, None, tuple(dims)


def local_multiplicity(F: MultiPoly, P: ProjPoint, seed: int = DEFAULT_SEED,
                       d_max: int = DEFAULT_D_MAX, charts: int = LOCAL_CHARTS) -> LocalMultiplicity:
    """Length of O_P / (F, F_1, F_2) for two generic partials.

    Special charts only make the length larger, so the minimum over a few
    random charts is kept.
    """
    if not singular_at(F, P.values):
        raise NotSingularError(f"{P} is not a singular point of the surface")
    rng = np.random.default_rng(seed)
    best: LocalMultiplicity | None = None
    for _ in range(max(1, charts)):
        value, stab, dims = _chart_length(F, _random_chart(F, P, rng), d_max)
        if value is None:
            continue
        if best is None or value < best.value:
            best = LocalMultiplicity(value, stab, seed, dims)
    if best is None:
        logger.warning("local multiplicity at %s did not stabilise by D=%d", P, d_max)
        return LocalMultiplicity(None, None, seed, dims)
    logger.debug("local multiplicity at %s stabilised at D=%d: %d", P, best.stab_degree, best.value)
    return best


@dataclass(frozen=True)
class SingularPointRecord:
    point: ProjPoint
    mult: int
    cone: str | None
    conic: str | None
    local_int_mult: int | None
    stab_degree: int | None
    inseparable: bool | None = None

    @property
    def defdeg(self) -> int:
        return self.point.defdeg

    def to_json(self) -> dict[str, object]:
        return {
            "coords": self.point.to_json(),
            "defdeg": self.defdeg,
            "mult": self.mult,
            "cone": self.cone,
            "local_int_mult": self.local_int_mult,
            "stab_degree": self.stab_degree,
        }


def classify_point(F: MultiPoly, P: ProjPoint, seed: int = DEFAULT_SEED,
                   d_max: int = DEFAULT_D_MAX) -> SingularPointRecord:
    taylor = taylor_at_singular_point(F, P)
    mult = taylor.multiplicity
    conic = cone = None
    inseparable = None
    if mult == 2:
        conic = conic_normal_form(taylor.q).kind
        cone = CONE_NAMES[conic]
        inseparable = taylor.g.is_zero()
    lm = local_multiplicity(F, P, seed, d_max)
    return SingularPointRecord(P, mult, cone, conic, lm.value, lm.stab_degree, inseparable)


def is_inseparable_projection(F: MultiPoly, P: ProjPoint) -> bool:
    taylor = taylor_at_singular_point(F, P)
    if taylor.multiplicity != 2:
        raise NotSingularError(f"{P} is not a double point")
    return taylor.g.is_zero()


@dataclass(frozen=True)
class GaussPlane:
    flag: bool
    witness: ProjPoint | None


def gauss_plane_test(F: MultiPoly) -> GaussPlane:
    """Is sum v_i F_i identically zero for some constant v != 0?"""
    grad = F.gradient()
    monos = sorted({e for p in grad for e in p.terms})
    if not monos:
        return GaussPlane(True, normalize([0, 0, 0, 1], F.ctx))
    matrix = np.array([[p.terms.get(e, 0) for p in grad] for e in monos], dtype=np.int64)
    kernel = F.ctx.nullspace(matrix)
    if not kernel:
        return GaussPlane(False, None)
    return GaussPlane(True, normalize(kernel[-1], F.ctx))


@dataclass(frozen=True)
class DegreeFormula:
    contribution: int
    residual: int | None
    gauss_plane: bool
    consistent: bool
    records: tuple[SingularPointRecord, ...]


def degree_formula_report(F: MultiPoly, records: Sequence[SingularPointRecord], *,
                          seed: int = DEFAULT_SEED, d_max: int = DEFAULT_D_MAX,
                          gauss: GaussPlane | None = None, retries: int = 3) -> DegreeFormula:
    """d(d-1)^2 minus the local contributions; 36 for quartics."""
    gauss = gauss or gauss_plane_test(F)
    d = F.degree
    records = tuple(records)

    def residual(recs) -> tuple[int, int | None]:
        total = sum(r.local_int_mult or 0 for r in recs)
        if any(r.local_int_mult is None for r in recs):
            return total, None
        return total, d * (d - 1) ** 2 - total

    contribution, res = residual(records)
    consistent = gauss.flag or res is None or d != 4 or res >= MIN_GAUSS_RESIDUAL
    attempt = 0
    while not consistent and attempt < retries:
        attempt += 1
        logger.warning("degree formula residual %s < %d, retrying with fresh coordinates", res, MIN_GAUSS_RESIDUAL)
        fresh = []
        for r in records:
            lm = local_multiplicity(F, r.point, seed + attempt, d_max)
            if lm.value is not None and (r.local_int_mult is None or lm.value < r.local_int_mult):
                r = SingularPointRecord(r.point, r.mult, r.cone, r.conic, lm.value, lm.stab_degree, r.inseparable)
            fresh.append(r)
        records = tuple(fresh)
        contribution, res = residual(records)
        consistent = res is None or res >= MIN_GAUSS_RESIDUAL
    return DegreeFormula(contribution, res, gauss.flag, consistent, records)


# --- normality ----------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalityResult:
    flag: str
    counts: dict[int, int]
    line_hits: int
    reason: str


def _subfield_chain(m: int) -> list[int]:
    chain = [k for k in (1, 2, 4) if m % k == 0 and k < m]
    return chain + [m]


def _line_content_hits(F: MultiPoly, seed: int) -> int:
    """Random lines on which F and all partials share a root over some extension."""
    ctx = F.ctx
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(RANDOM_LINES):
        while True:
            matrix = [[int(v) for v in rng.integers(0, ctx.q, size=4)] for _ in range(4)]
            try:
                ctx.mat_inv(matrix)
                break
            except ValueError:
                continue
        g: list[int] = []
        for poly in [F] + F.gradient():
            restricted = poly.linear_substitute(matrix).specialize({0: 1, 2: 0, 3: 0})
            g = _ugcd(ctx, g, restricted.univariate(1))
        if not g or len(g) > 1:
            hits += 1
    return hits


def normality_heuristic(F: MultiPoly, *, seed: int = DEFAULT_SEED, threads: int = DEFAULT_THREADS,
                        chain: Sequence[int] | None = None,
                        known: Mapping[int, int] | None = None) -> NormalityResult:
    """Heuristic: counts along a subfield chain plus content checks on random lines.

    `known` maps subfield degrees to point counts already enumerated; those levels are not rescanned.
    """
    _check_surface(F)
    ctx = F.ctx
    if all(p.is_zero() for p in F.gradient()):
        return NormalityResult(NON_NORMAL, {}, 0, "gradient vanishes identically")
    bound = NORMAL_SING_BOUND.get(F.degree, ctx.q // 2)
    counts: dict[int, int] = {}
    chain = list(chain or _subfield_chain(ctx.m))
    for k in chain:
        if known and k in known:
            counts[k] = known[k]
            if counts[k] > bound:
                return NormalityResult(NON_NORMAL, counts, 0, f"over GF(2^{k}): {counts[k]} points exceed {bound}")
            continue
        try:
            counts[k] = len(singular_points(F, subfield=k, limit=bound, threads=threads, seed=seed))
        except NonIsolatedSingularities as exc:
            return NormalityResult(NON_NORMAL, counts, 0, f"over GF(2^{k}): {exc}")
    hits = _line_content_hits(F, seed)
    if hits >= RANDOM_LINES - 1:
        return NormalityResult(NON_NORMAL, counts, hits, "F and its partials share a factor")
    if hits:
        return NormalityResult(INCONCLUSIVE, counts, hits, "some random lines meet the singular locus")
    if len(chain) > 1 and counts[chain[-1]] != counts[chain[-2]]:
        return NormalityResult(INCONCLUSIVE, counts, hits, "count still growing along the subfield chain")
    return NormalityResult(PROBABLY_NORMAL, counts, hits, "finite, stable and below the bound")


# --- full report ----------------------------------------------------------------------------

@dataclass
class SingularReport:
    surface: MultiPoly
    records: list[SingularPointRecord]
    gauss: GaussPlane
    normality: NormalityResult
    degree: DegreeFormula | None
    seed: int
    subfield: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def by_defdeg(self) -> dict[int, int]:
        return dict(sorted(Counter(r.defdeg for r in self.records).items()))

    @property
    def degree_residual(self) -> int | None:
        return self.degree.residual if self.degree else None

    @property
    def field_name(self) -> str:
        return self.surface.ctx.name if not self.subfield else f"GF(2^{self.subfield})"

    def to_json(self) -> dict[str, object]:
        return {
            "schema": SCHEMA_VERSION,
            "surface": format_poly(self.surface),
            "field": self.field_name,
            "modulus": str(self.surface.ctx),
            "seed": self.seed,
            "subfield": self.subfield,
            "points": [r.to_json() for r in self.records],
            "total": self.total,
            "by_defdeg": {str(k): v for k, v in self.by_defdeg.items()},
            "degree_residual": self.degree_residual,
            "gauss_plane": self.gauss.flag,
            "witness": list(self.gauss.witness.values) if self.gauss.witness else None,
            "normality": self.normality.flag,
            "notes": list(self.notes),
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [{
            "point": str(r.point),
            "defdeg": r.defdeg,
            "mult": r.mult,
            "cone": r.cone,
            "local_int_mult": r.local_int_mult,
            "stab_degree": r.stab_degree,
        } for r in self.records]
        columns = ["point", "defdeg", "mult", "cone", "local_int_mult", "stab_degree"]
        return pd.DataFrame(rows, columns=columns)


def analyze(F: MultiPoly, *, seed: int = DEFAULT_SEED, d_max: int = DEFAULT_D_MAX,
            threads: int = DEFAULT_THREADS, subfield: int | None = None,
            with_normality: bool = True) -> SingularReport:
    _check_surface(F)
    gauss = gauss_plane_test(F)
    try:
        points = singular_points(F, subfield=subfield, threads=threads, seed=seed,
                                 limit=NORMAL_SING_BOUND.get(F.degree))
    except NonIsolatedSingularities as exc:
        normality = NormalityResult(NON_NORMAL, {}, 0, str(exc))
        return SingularReport(F, [], gauss, normality, None, seed, subfield, [f"heuristic: {exc}"])

    def work(p: ProjPoint) -> SingularPointRecord:
        return classify_point(F, p, seed, d_max)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        records = list(pool.map(work, points))
    degree = degree_formula_report(F, records, seed=seed, d_max=d_max, gauss=gauss)
    records = list(degree.records)
    notes = []
    if with_normality:
        chain = None if subfield is None else _subfield_chain(subfield)
        normality = normality_heuristic(F, seed=seed, threads=threads, chain=chain,
                                        known={subfield or F.ctx.m: len(points)})
    else:
        normality = NormalityResult(INCONCLUSIVE, {}, 0, "not computed")
    if not degree.consistent:
        notes.append("degree formula residual below 3 after retries")
    if any(r.local_int_mult is None for r in records):
        notes.append("local multiplicity inconclusive at some point")
    notes.append(f"heuristic normality: {normality.reason}")
    return SingularReport(F, records, gauss, normality, degree, seed, subfield, notes)
