from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .constants import (
    DEFAULT_D_MAX,
    DEFAULT_FIELD_DEGREE,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    EXIT_FAILED_CLAIMS,
    EXIT_INCONCLUSIVE,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    INCONCLUSIVE,
)
from .families import (
    FamilyExpectation,
    GenericityError,
    SymmetricFamilySpec,
    cayley_cubic,
    cayley_expectation,
    classify_symmetric,
    d4,
    f16_instance,
    inseparable_step4,
    klein,
    pencil,
    schuett_quartic,
    step4_linear_factors,
    symmetric_quartic,
    triple_point_example,
)
from .ff2k import FieldCtx, parse_field_spec
from .geometry import conic_normal_form
from .mpoly import HomogeneityError, MultiPoly, ParseError, infer_nvars, parse, parse_element
from .reports import (
    claims_text,
    conic_payload,
    conic_text,
    frame_records,
    histogram,
    points_frame,
    render_frame,
    report_json,
    report_text,
    to_json,
)
from .singular import NonIsolatedSingularities, analyze, critical_points_plane
from .suite import CLAIMS, SuiteOptions, random_sweep, run_claims, symmetric_sweep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    ctx: FieldCtx
    seed: int = DEFAULT_SEED
    json: bool = False
    d_max: int = DEFAULT_D_MAX
    threads: int = DEFAULT_THREADS
    strict: bool = False

    @property
    def suite(self) -> SuiteOptions:
        return SuiteOptions(self.seed, self.d_max, self.threads)


def _emit(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


def _read_polynomial(path: str, ctx: FieldCtx, nvars: int | None = None, degree: int | None = None) -> MultiPoly:
    lines = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError(f"{path} holds no polynomial", 0)
    text = " ".join(lines)
    return parse(text, ctx, nvars or infer_nvars(text), degree=degree, homogeneous=True)


# --- commands -----------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace, config: RunConfig) -> int:
    F = _read_polynomial(args.file, config.ctx)
    while F.nvars < 4:
        F = F.add_variable(F.nvars)
    report = analyze(F, seed=config.seed, d_max=config.d_max, threads=config.threads, subfield=args.subfield)
    _emit(report_json(report) if config.json else report_text(report))
    inconclusive = (report.normality.flag == INCONCLUSIVE
                    or any(r.local_int_mult is None for r in report.records)
                    or (report.degree is not None and not report.degree.consistent))
    if config.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_conic(args: argparse.Namespace, config: RunConfig) -> int:
    Q = _read_polynomial(args.file, config.ctx, nvars=3, degree=2)
    conic = conic_normal_form(Q)
    if config.json:
        _emit(to_json({"field": str(config.ctx), "seed": config.seed, **conic_payload(conic)}))
    else:
        _emit(conic_text(conic, config.ctx))
    return EXIT_OK


def cmd_critical(args: argparse.Namespace, config: RunConfig) -> int:
    B = _read_polynomial(args.file, config.ctx, nvars=3)
    try:
        points = critical_points_plane(B, subfield=args.subfield, threads=config.threads)
        flag = False
    except NonIsolatedSingularities as exc:
        if not exc.gradient_zero:
            raise
        points, flag = [], True
    if config.json:
        _emit(to_json({
            "field": str(config.ctx),
            "seed": config.seed,
            "identically_critical": flag,
            "points": [p.to_json() for p in points],
            "total": len(points),
            "by_defdeg": histogram(points),
        }))
        return EXIT_OK
    if flag:
        _emit("every point is critical: the gradient vanishes identically")
        return EXIT_OK
    _emit(render_frame(points_frame(points)))
    _emit(f"\ntotal: {len(points)}")
    _emit("by_defdeg: " + ", ".join(f"{k}: {v}" for k, v in histogram(points).items()))
    return EXIT_OK


def _elements(ctx: FieldCtx, texts: Sequence[str]) -> list[int]:
    return [parse_element(t, ctx).value for t in texts]


def _family(args: argparse.Namespace, ctx: FieldCtx) -> tuple[MultiPoly, FamilyExpectation]:
    name = args.family
    if name == "cayley":
        return cayley_cubic(ctx), cayley_expectation(ctx)
    if name == "step4":
        return inseparable_step4(*_elements(ctx, args.params), ctx)
    if name == "f16":
        return f16_instance(ctx)
    if name == "schuett":
        if args.curve == "klein":
            B = klein(ctx)
        else:
            w = ctx.omega
            if w is None:
                raise GenericityError(f"the line arrangement needs GF(4) inside {ctx.name}")
            B = MultiPoly.constant(ctx, 3, 1)
            for line in step4_linear_factors(ctx.square(w), ctx.square(w), w, ctx):
                B = B * line
        return schuett_quartic(B, parse(args.ell, ctx, nvars=3, degree=1))
    if name == "symmetric":
        spec = SymmetricFamilySpec.of(ctx, *_elements(ctx, args.params))
        return symmetric_quartic(spec), classify_symmetric(spec)
    if name == "pencil":
        return pencil(_elements(ctx, [args.value])[0], ctx)
    if name == "d4":
        return d4(_elements(ctx, [args.value])[0], ctx)
    if name == "triple":
        return triple_point_example(ctx)
    raise ValueError(f"unknown family {name!r}")


def cmd_families(args: argparse.Namespace, config: RunConfig) -> int:
    F, expectation = _family(args, config.ctx)
    report = analyze(F, seed=config.seed, d_max=config.d_max, threads=config.threads, subfield=args.subfield)
    found = [r.point for r in report.records]
    check = None if expectation.degenerate else expectation.compare(found, args.subfield)
    if config.json:
        body = report.to_json()
        body.pop("schema", None)
        body["expectation"] = {
            "name": expectation.name,
            "total": expectation.total,
            "points": [list(p.values) for p in expectation.restricted(args.subfield)],
            "reducible": expectation.reducible,
            "infinite": expectation.infinite,
            "strata": expectation.strata,
            "match": None if check is None else check.ok,
        }
        _emit(to_json(body))
    else:
        _emit(report_text(report))
        _emit(f"\nexpected ({expectation.name}): total {expectation.total} over the closure, "
              f"{len(expectation.restricted(args.subfield))} rational")
        if expectation.degenerate:
            _emit("expected: degenerate (" + "; ".join(expectation.notes) + ")")
        elif check.ok:
            _emit("match: yes")
        else:
            _emit("missing: " + ", ".join(map(str, check.missing)))
            _emit("unexpected: " + ", ".join(map(str, check.unexpected)))
    if check is not None and not check.ok:
        return EXIT_FAILED_CLAIMS
    return EXIT_OK


def cmd_verify_paper(args: argparse.Namespace, config: RunConfig) -> int:
    df = run_claims(config.ctx, args.case, config.suite)
    if config.json:
        _emit(to_json({"field": str(config.ctx), "seed": config.seed, "claims": frame_records(df)}))
    else:
        _emit(claims_text(df))
    return EXIT_FAILED_CLAIMS if (df["verdict"] == "FAIL").any() else EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    ctx = config.ctx
    subfield = args.subfield or ctx.m
    if args.random:
        df = random_sweep(ctx, args.random, subfield=subfield, opts=config.suite)
    else:
        df = symmetric_sweep(ctx, ctx.subfield_elements(args.values), subfield=subfield, opts=config.suite)
    failed = df[~df["ok"].astype(bool)]
    if config.json:
        _emit(to_json({"field": str(ctx), "seed": config.seed, "rows": frame_records(df),
                       "failed": len(failed)}))
    else:
        summary = df.groupby(["flagged", "predicted"], dropna=False).size().reset_index(name="specs")
        _emit(render_frame(summary))
        _emit(f"\n{len(df)} specs, {len(failed)} failed")
        if not failed.empty:
            _emit(render_frame(failed))
    return EXIT_FAILED_CLAIMS if not failed.empty else EXIT_OK


# --- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singquartic",
                                     description="Singular points of quartic surfaces over GF(2^m).")
    parser.add_argument("--field", default=f"GF(2^{DEFAULT_FIELD_DEGREE})", help="GF(2^m) or GF(2^m):modulus")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--dmax", type=int, default=DEFAULT_D_MAX, help="truncation limit for local multiplicities")
    parser.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    parser.add_argument("--strict", action="store_true", help="exit 3 on inconclusive results")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="singular points and their classification")
    p.add_argument("file")
    p.add_argument("--subfield", type=int, default=None, help="search GF(2^k) only")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("conic", help="normal form of a plane conic")
    p.add_argument("file")
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("critical", help="critical points of a plane curve")
    p.add_argument("file")
    p.add_argument("--subfield", type=int, default=None)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("families", help="explicit constructions and their expected singular points")
    p.add_argument("--subfield", type=int, default=None)
    fam = p.add_subparsers(dest="family", required=True)
    fam.add_parser("cayley")
    fam.add_parser("f16")
    fam.add_parser("triple")
    q = fam.add_parser("step4")
    q.add_argument("params", nargs=3, metavar="a")
    q = fam.add_parser("schuett")
    q.add_argument("--curve", choices=["klein", "lines"], default="klein")
    q.add_argument("--ell", default="x1")
    q = fam.add_parser("symmetric")
    q.add_argument("params", nargs=5, metavar="a")
    q = fam.add_parser("pencil")
    q.add_argument("value", metavar="c")
    q = fam.add_parser("d4")
    q.add_argument("value", metavar="beta")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("verify-paper", help="run the claim suite")
    p.add_argument("--case", default=None, choices=[c.name for c in CLAIMS])
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("sweep", help="symmetric quartic sweep")
    p.add_argument("--values", type=int, default=2, help="coefficients range over GF(2^k)")
    p.add_argument("--subfield", type=int, default=None, help="enumerate over GF(2^k)")
    p.add_argument("--random", type=int, default=0, help="sample this many specs instead")
    p.set_defaults(func=cmd_sweep)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        ctx = parse_field_spec(args.field)
    except ValueError as exc:
        parser.error(str(exc))
    config = RunConfig(ctx, args.seed, args.json, args.dmax, max(1, args.threads), args.strict)
    try:
        return args.func(args, config)
    except (ParseError, HomogeneityError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE_ERROR
    except (GenericityError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE_ERROR
    except Exception:
        logger.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
