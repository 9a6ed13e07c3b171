from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd

from .constants import (
    DEFAULT_D_MAX,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    NODE,
    NON_NORMAL,
    NORMAL_SING_BOUND,
    ORBIT_SIZES,
    PROBABLY_NORMAL,
    TRIPLE_POINT_SING_BOUND,
    UNIPLANAR,
    UNIPLANAR_SING_BOUND,
)
from .ff2k import FieldCtx
from .families import (
    SymmetricFamilySpec,
    cayley_cubic,
    cayley_expectation,
    classify_symmetric,
    d4,
    f16_instance,
    klein,
    klein_critical_points,
    pencil,
    schuett_quartic,
    step4_linear_factors,
    symmetric_quartic,
    triple_point_example,
)
from .geometry import ProjPoint
from .mpoly import MultiPoly, parse, taylor_at_singular_point
from .singular import (
    _subfield_chain,
    analyze,
    critical_points_plane,
    is_inseparable_projection,
    monoid_bound,
    normality_heuristic,
    singular_points,
)

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

CLAIM_COLUMNS = ["claim", "anchor", "expected", "observed", "verdict"]


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = DEFAULT_SEED
    d_max: int = DEFAULT_D_MAX
    threads: int = DEFAULT_THREADS


@dataclass(frozen=True)
class Claim:
    name: str
    anchor: str
    run: Callable[[FieldCtx, SuiteOptions], tuple[object, object, bool]]
    needs: int = 1


def _hist(points: list[ProjPoint]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in points:
        out[p.defdeg] = out.get(p.defdeg, 0) + 1
    return dict(sorted(out.items()))


def _klein7(ctx, opts):
    found = critical_points_plane(klein(ctx), threads=opts.threads)
    want = klein_critical_points(ctx)
    return f"7 points {{1: 1, 3: 6}}", f"{len(found)} points {_hist(found)}", found == want


def _f16(ctx, opts):
    F, expectation = f16_instance(ctx)
    found = singular_points(F, threads=opts.threads, seed=opts.seed)
    check = expectation.compare(found)
    return "14 points {1: 4, 2: 4, 4: 6}", f"{len(found)} points {_hist(found)}", check.ok and len(found) == 14


def _f16_subfields(ctx, opts):
    F, _ = f16_instance(ctx)
    counts = [len(singular_points(F, subfield=k, threads=opts.threads, seed=opts.seed)) for k in (1, 2, 4)]
    return "4 over GF(2), 8 over GF(4), 14 over GF(16)", str(counts), counts == [4, 8, 14]


def _f16_inseparable(ctx, opts):
    F, _ = f16_instance(ctx)
    P = ProjPoint((0, 0, 0, 1), ctx)
    value = is_inseparable_projection(F, P)
    return "projection from (0:0:0:1) inseparable", str(value), value


def _f16_normal(ctx, opts):
    F, _ = f16_instance(ctx)
    flag = normality_heuristic(F, seed=opts.seed, threads=opts.threads).flag
    return PROBABLY_NORMAL, flag, flag == PROBABLY_NORMAL


def _schuett(ctx, opts):
    x1 = MultiPoly.variable(ctx, 3, 0)
    F, expectation = schuett_quartic(klein(ctx), x1)
    report = analyze(F, seed=opts.seed, d_max=opts.d_max, threads=opts.threads, with_normality=False)
    cones = {r.cone for r in report.records}
    mults = {r.local_int_mult for r in report.records}
    observed = (f"{report.total} points, cones {sorted(map(str, cones))}, "
                f"residual {report.degree_residual}, gauss {report.gauss.flag}")
    found = [r.point for r in report.records]
    ok = (expectation.total == 14 and expectation.compare(found).ok and cones <= {NODE} and mults <= {2}
          and report.degree_residual == 36 - 2 * report.total and report.gauss.flag)
    return "14 nodes, residual 8, gauss plane", observed, ok


def _pencil(c_of: Callable[[FieldCtx], int], label: str):
    def run(ctx, opts):
        F, expectation = pencil(c_of(ctx), ctx)
        report = analyze(F, seed=opts.seed, d_max=opts.d_max, threads=opts.threads, with_normality=False)
        cones = {r.cone for r in report.records}
        found = [r.point for r in report.records]
        ok = report.total == 10 and cones == {NODE} and expectation.compare(found).ok
        return f"10 nodes at c={label}", f"{report.total} points, cones {sorted(map(str, cones))}", ok
    return run


def _pencil_zero(ctx, opts):
    F, expectation = pencil(0, ctx)
    flag = normality_heuristic(F, seed=opts.seed, threads=opts.threads).flag
    ok = expectation.reducible and flag != PROBABLY_NORMAL
    return "c=0 reducible, flagged", f"reducible={expectation.reducible}, {flag}", ok


def _d4(beta_of: Callable[[FieldCtx], int], label: str):
    def run(ctx, opts):
        F, _ = d4(beta_of(ctx), ctx)
        report = analyze(F, seed=opts.seed, d_max=opts.d_max, threads=opts.threads, with_normality=False)
        cones = {r.cone for r in report.records}
        mults = [r.local_int_mult for r in report.records]
        ok = (report.total == 4 and cones == {UNIPLANAR} and uniplanar_bound_holds(report.records)
              and all(m is not None and m >= 8 for m in mults))
        return f"4 uniplanar points, (F,F1,F2) >= 8, beta={label}", f"{report.total} points, {mults}", ok
    return run


def _cayley(ctx, opts):
    F = cayley_cubic(ctx)
    report = analyze(F, seed=opts.seed, d_max=opts.d_max, threads=opts.threads, with_normality=False)
    found = [r.point for r in report.records]
    ok = cayley_expectation(ctx).compare(found).ok and {r.cone for r in report.records} == {NODE}
    return f"4 nodes <= {monoid_bound(3)}", f"{report.total} points", ok and report.total <= monoid_bound(3)


def _triple(ctx, opts):
    F, expectation = triple_point_example(ctx)
    found = singular_points(F, threads=opts.threads, seed=opts.seed)
    mult = taylor_at_singular_point(F, (0, 0, 0, 1)).multiplicity
    ok = expectation.compare(found).ok and len(found) <= TRIPLE_POINT_SING_BOUND and mult == 3
    return f"<= {TRIPLE_POINT_SING_BOUND} points, triple point", f"{len(found)} points, mult {mult}", ok


def _quadruple_plane(ctx, opts):
    F = parse("x1^4 + x2^4 + x3^4 + x4^4", ctx, homogeneous=True)
    flag = normality_heuristic(F, seed=opts.seed, threads=opts.threads).flag
    return NON_NORMAL, flag, flag == NON_NORMAL


def _lines7(ctx, opts):
    w = ctx.omega
    B = None
    for line in step4_linear_factors(ctx.square(w), ctx.square(w), w, ctx):
        B = line if B is None else B * line
    found = critical_points_plane(B, threads=opts.threads)
    return "7 critical points", f"{len(found)} points", len(found) == 7


def _sweep(ctx, opts):
    subfield = 4 if ctx.m % 4 == 0 else 2
    frame = symmetric_sweep(ctx, ctx.subfield_elements(2), subfield=subfield, opts=opts)
    bad = frame[~frame["ok"].astype(bool)]
    return "every normal member matches its orbit prediction", f"{len(frame) - len(bad)}/{len(frame)} ok", bad.empty


CLAIMS = [
    Claim("klein7", "plane quartic critical locus: at most 7 points", _klein7, 3),
    Claim("f16", "14 singular points defined over F_16", _f16, 4),
    Claim("f16-subfields", "8 of them over F_4, 4 of them over F_2", _f16_subfields, 4),
    Claim("f16-inseparable", "projection from P is an inseparable double cover", _f16_inseparable, 4),
    Claim("f16-normal", "a normal quartic surface", _f16_normal, 4),
    Claim("schuett-klein", "14 singular points, which are nodes", _schuett, 3),
    Claim("pencil-1", "10 singular points except for c=0; nodes", _pencil(lambda ctx: 1, "1"), 1),
    Claim("pencil-omega", "10 singular points except for c=0; nodes", _pencil(lambda ctx: ctx.omega, "omega"), 2),
    Claim("pencil-0", "c=0 degenerates", _pencil_zero, 1),
    Claim("d4-1", "4 uniplanar double points of type D4", _d4(lambda ctx: 1, "1"), 1),
    Claim("d4-omega", "4 uniplanar double points of type D4", _d4(lambda ctx: ctx.omega, "omega"), 2),
    Claim("cayley", "singular points are the 4 coordinate points", _cayley, 1),
    Claim("triple", "a triple point forces at most 7 singular points", _triple, 1),
    Claim("quadruple-plane", "a quadruple plane is not normal", _quadruple_plane, 1),
    Claim("lines7", "gradient of 4 general lines vanishes at 7 points", _lines7, 2),
    Claim("sweep", "exactly one of the cardinalities 1,4,5,6,10,12", _sweep, 2),
]


def run_claims(ctx: FieldCtx, case: str | None = None, opts: SuiteOptions | None = None) -> pd.DataFrame:
    opts = opts or SuiteOptions()
    rows = []
    for claim in CLAIMS:
        if case and claim.name != case:
            continue
        if ctx.m % claim.needs:
            rows.append({"claim": claim.name, "anchor": claim.anchor, "expected": "",
                         "observed": f"needs GF(2^{claim.needs}) inside {ctx.name}", "verdict": SKIP})
            continue
        logger.info("checking claim %s", claim.name)
        try:
            expected, observed, ok = claim.run(ctx, opts)
        except Exception as exc:
            logger.exception("claim %s raised", claim.name)
            expected, observed, ok = "", f"{type(exc).__name__}: {exc}", False
        rows.append({"claim": claim.name, "anchor": claim.anchor, "expected": str(expected),
                     "observed": str(observed), "verdict": PASS if ok else FAIL})
    if case and not rows:
        raise ValueError(f"unknown claim {case!r}; known: {', '.join(c.name for c in CLAIMS)}")
    return pd.DataFrame(rows, columns=CLAIM_COLUMNS)


# --- symmetric sweep --------------------------------------------------------------------

SWEEP_COLUMNS = ["spec", "flagged", "predicted", "found", "match", "cardinality", "normality", "ok"]


def _sweep_row(spec: SymmetricFamilySpec, subfield: int, opts: SuiteOptions) -> dict[str, object]:
    expectation = classify_symmetric(spec)
    F = symmetric_quartic(spec)
    row: dict[str, object] = {"spec": str(spec), "flagged": expectation.degenerate}
    if expectation.degenerate:
        flag = normality_heuristic(F, seed=opts.seed, threads=1, chain=_subfield_chain(subfield)).flag
        row.update(predicted=None, found=None, match=None, cardinality=None, normality=flag,
                   ok=flag != PROBABLY_NORMAL)
        return row
    found = singular_points(F, subfield=subfield, threads=1, seed=opts.seed)
    match = expectation.compare(found, subfield).ok
    cardinality = expectation.total in ORBIT_SIZES and len(found) <= NORMAL_SING_BOUND[4]
    row.update(predicted=expectation.total, found=len(found), match=match, cardinality=cardinality,
               normality=None, ok=match and cardinality)
    return row


def symmetric_sweep(ctx: FieldCtx, values: list[int], *, subfield: int | None = None,
                    opts: SuiteOptions | None = None) -> pd.DataFrame:
    """Every spec with entries in `values`, enumerated over GF(2^subfield)."""
    opts = opts or SuiteOptions()
    subfield = subfield or ctx.m
    specs = [SymmetricFamilySpec.of(ctx, *combo) for combo in itertools.product(values, repeat=5) if any(combo)]
    logger.info("sweeping %d symmetric quartics over GF(2^%d)", len(specs), subfield)
    with ThreadPoolExecutor(max_workers=max(1, opts.threads)) as pool:
        rows = list(pool.map(lambda s: _sweep_row(s, subfield, opts), specs))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def random_symmetric_specs(ctx: FieldCtx, count: int, seed: int = DEFAULT_SEED,
                           subfield: int | None = None) -> list[SymmetricFamilySpec]:
    elems = ctx.subfield_elements(subfield or ctx.m)
    rng = np.random.default_rng(seed)
    specs = []
    while len(specs) < count:
        combo = [elems[int(i)] for i in rng.integers(0, len(elems), size=5)]
        if any(combo):
            specs.append(SymmetricFamilySpec.of(ctx, *combo))
    return specs


def random_sweep(ctx: FieldCtx, count: int, *, subfield: int | None = None,
                 opts: SuiteOptions | None = None) -> pd.DataFrame:
    opts = opts or SuiteOptions()
    subfield = subfield or ctx.m
    specs = random_symmetric_specs(ctx, count, opts.seed, subfield)
    with ThreadPoolExecutor(max_workers=max(1, opts.threads)) as pool:
        rows = list(pool.map(lambda s: _sweep_row(s, subfield, opts), specs))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def uniplanar_bound_holds(records) -> bool:
    if any(r.cone == UNIPLANAR for r in records):
        return len(records) <= UNIPLANAR_SING_BOUND
    return True
