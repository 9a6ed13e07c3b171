from __future__ import annotations

import json
from typing import Any

import pandas as pd

from .constants import SCHEMA_VERSION
from .geometry import ConicClass, ProjPoint
from .singular import SingularReport


def _clean(value: Any) -> Any:
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, float) and value != value:
        return None
    return value


def frame_records(df: pd.DataFrame) -> list[dict[str, Any]]:
    """DataFrame rows as plain JSON-safe dicts."""
    if df.empty:
        return []
    out = []
    for row in df.astype(object).to_dict(orient="records"):
        out.append({str(k): _clean(v) for k, v in row.items()})
    return out


def to_json(payload: dict[str, Any]) -> str:
    body = {"schema": SCHEMA_VERSION, **payload}
    return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False)


def render_frame(df: pd.DataFrame) -> str:
    if df.empty:
        return "(none)"
    return df.to_string(index=False)


def points_frame(points: list[ProjPoint]) -> pd.DataFrame:
    rows = [{"point": str(p), "defdeg": p.defdeg} for p in points]
    return pd.DataFrame(rows, columns=["point", "defdeg"])


def histogram(points: list[ProjPoint]) -> dict[str, int]:
    counts = pd.Series([p.defdeg for p in points], dtype="int64").value_counts().sort_index()
    return {str(k): int(v) for k, v in counts.items()}


def header(ctx_text: str, seed: int) -> list[str]:
    return [f"field: {ctx_text}", f"seed: {seed}"]


def report_text(report: SingularReport) -> str:
    lines = [f"surface: {report.to_json()['surface']}"]
    lines += header(str(report.surface.ctx), report.seed)
    if report.subfield:
        lines.append(f"searched: GF(2^{report.subfield})")
    lines += ["", render_frame(report.to_frame()), ""]
    lines.append(f"total: {report.total}")
    lines.append("by_defdeg: " + ", ".join(f"{k}: {v}" for k, v in report.by_defdeg.items()))
    lines.append(f"degree_residual: {report.degree_residual}")
    witness = str(report.gauss.witness) if report.gauss.witness else "-"
    lines.append(f"gauss_plane: {report.gauss.flag} (witness {witness})")
    lines.append(f"normality (heuristic): {report.normality.flag}")
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines)


def report_json(report: SingularReport) -> str:
    body = report.to_json()
    body.pop("schema", None)
    return to_json(body)


def conic_payload(conic: ConicClass) -> dict[str, Any]:
    return {
        "kind": conic.kind,
        "normal_form": conic.normal_form,
        "transform": [list(r) for r in conic.transform] if conic.transform else None,
        "inverse": [list(r) for r in conic.inverse] if conic.inverse else None,
        "strange_point": list(conic.strange_point.values) if conic.strange_point else None,
    }


def conic_text(conic: ConicClass, ctx) -> str:
    lines = [f"class: {conic.kind}", f"normal form: {conic.normal_form}"]
    if conic.strange_point is not None:
        lines.append(f"strange point: {conic.strange_point}")
    if conic.transform is None:
        lines.append("transform: none over this field (the two lines are conjugate)")
    else:
        lines.append("transform:")
        lines += ["  " + "  ".join(ctx.format(v) for v in row) for row in conic.transform]
    return "\n".join(lines)


def claims_text(df: pd.DataFrame) -> str:
    failed = int((df["verdict"] == "FAIL").sum()) if not df.empty else 0
    return render_frame(df) + f"\n\n{len(df)} claims, {failed} failed"
