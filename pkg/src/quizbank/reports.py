"""Plain-text tables and JSON payloads for the statistics commands."""

from __future__ import annotations

import dataclasses
import json
from typing import Sequence

from .model import AnovaResult, GradeRecord, LetterBucket, TukeyContrast
from .stats import group_summary, split_by_group

_BUCKET_LABELS = {
    LetterBucket.A_PLUS: "A+",
    LetterBucket.A: "A",
    LetterBucket.B_C: "B and C",
    LetterBucket.D: "D",
    LetterBucket.E_F: "E and F",
}


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def to_json(obj) -> str:
    def plain(o):
        if dataclasses.is_dataclass(o):
            return {f.name: plain(getattr(o, f.name)) for f in dataclasses.fields(o)}
        if isinstance(o, LetterBucket):
            return o.value
        if isinstance(o, (list, tuple)):
            return [plain(x) for x in o]
        if isinstance(o, dict):
            return {str(k): plain(v) for k, v in o.items()}
        return o
    return json.dumps(plain(obj), indent=2, ensure_ascii=False) + "\n"


def render_summary(records: Sequence[GradeRecord]) -> str:
    """Mark distribution per group with means and population stds."""
    groups = split_by_group(records)
    header = [""]
    for label in groups:
        header += [label, ""]
    rows = []
    for bucket in LetterBucket:
        row = [_BUCKET_LABELS[bucket]]
        for members in groups.values():
            n = sum(1 for r in members if r.letter_bucket is bucket)
            row += [str(n), f"{100 * n / len(members):.0f}%"]
        rows.append(row)
    summaries = [group_summary(members) for members in groups.values()]
    rows.append(["Means"] + [x for s in summaries for x in (f"{s.mean:.2f}", "")])
    rows.append(["Standard Deviations"] + [x for s in summaries for x in (f"{s.std:.2f}", "")])
    return _table(header, rows)


def render_anova(result: AnovaResult) -> str:
    rows = [["Between groups", f"{result.ss_between:.4f}", str(result.df_between),
             f"{result.ms_between:.4f}", f"{result.f:.4f}"],
            ["Within groups", f"{result.ss_within:.4f}", str(result.df_within),
             f"{result.ms_within:.4f}", ""],
            ["Total", f"{result.ss_total:.4f}", str(result.n_total - 1), "", ""]]
    return _table(["Source", "SS", "df", "MS", "F"], rows)


def _p_text(p: float) -> str:
    return "< 0.0001" if p < 1e-4 else f"{p:.3f}"


def render_tukey(contrasts: Sequence[TukeyContrast]) -> str:
    rows = [[f"{c.pair[0]} vs {c.pair[1]}", f"{c.difference:.3f}", f"{c.standardized:.3f}",
             f"{c.critical:.3f}", _p_text(c.p), "Yes" if c.significant else "No"]
            for c in contrasts]
    return _table(["Contrast", "Difference", "Standardized difference", "Critical value",
                   "Pr > Diff", "Significant"], rows)
