"""CSV readers and writers for grades, responses, keys, scores and counts.

Row numbers in errors count the header as row 1.
"""

from __future__ import annotations

import csv
import io
import re
from typing import Iterable, Sequence

from .errors import CsvSchemaError, LetterError
from .model import (GRADE_LETTERS, LETTERS, AnswerKey, GradeRecord,
                    ResponseSheet, TestScore)


def _rows(text: str, required: Sequence[str]) -> tuple[list[str], list[tuple[int, dict]]]:
    reader = csv.reader(io.StringIO(text.lstrip("\ufeff")))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise CsvSchemaError(1, required[0], "missing header row") from None
    for name in required:
        if name not in header:
            raise CsvSchemaError(1, name, "required column is missing")
    rows = []
    for lineno, raw in enumerate(reader, start=2):
        if not any(cell.strip() for cell in raw):
            continue
        if len(raw) != len(header):
            raise CsvSchemaError(lineno, header[min(len(raw), len(header) - 1)],
                                 f"expected {len(header)} cells, found {len(raw)}")
        rows.append((lineno, {h: cell.strip() for h, cell in zip(header, raw)}))
    return header, rows


def write_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _number(value: str, row: int, column: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise CsvSchemaError(row, column, f"not a number: {value!r}") from None


def parse_grades_csv(text: str) -> list[GradeRecord]:
    """Read ``student,group,points`` or ``student,group,letter`` rows."""
    header, rows = _rows(text, ("student", "group"))
    if "points" in header:
        column = "points"
    elif "letter" in header:
        column = "letter"
    else:
        raise CsvSchemaError(1, "points", "need a 'points' or a 'letter' column")
    records = []
    for row, cells in rows:
        value = cells[column]
        if column == "points":
            if not re.fullmatch(r"[0-4]", value):
                raise CsvSchemaError(row, column, f"grade points must be an integer 0-4, got {value!r}")
            records.append(GradeRecord.from_points(cells["student"], cells["group"], int(value)))
        else:
            if value not in GRADE_LETTERS:
                raise LetterError(row, column, f"unknown grade letter {value!r}")
            records.append(GradeRecord.from_letter(cells["student"], cells["group"], value))
    return records


def render_grades_csv(records: Iterable[GradeRecord]) -> str:
    return write_csv(("student", "group", "points"),
                     ((r.student, r.group, r.points) for r in records))


def parse_responses_csv(text: str) -> list[ResponseSheet]:
    """Read ``student,test_id,p1,p2,...`` rows; empty cells are blanks."""
    header, rows = _rows(text, ("student", "test_id"))
    positions = []
    for name in header:
        if name in ("student", "test_id"):
            continue
        m = re.fullmatch(r"p([1-9][0-9]*)", name)
        if not m:
            raise CsvSchemaError(1, name, "answer columns must be named p1, p2, ...")
        positions.append((name, int(m.group(1))))
    if [p for _, p in positions] != list(range(1, len(positions) + 1)):
        raise CsvSchemaError(1, positions[0][0] if positions else "p1",
                             "answer columns must run p1..pn in order")
    sheets = []
    for row, cells in rows:
        answers = {}
        for name, pos in positions:
            letter = cells[name].lower()
            if letter and (len(letter) != 1 or letter not in LETTERS):
                raise LetterError(row, name, f"not an answer letter: {cells[name]!r}")
            answers[pos] = letter or None
        sheets.append(ResponseSheet(cells["student"], cells["test_id"], answers))
    return sheets


def render_responses_csv(sheets: Sequence[ResponseSheet]) -> str:
    n = max((max(s.answers, default=0) for s in sheets), default=0)
    header = ["student", "test_id"] + [f"p{i}" for i in range(1, n + 1)]
    return write_csv(header, ([s.student, s.test_id] + [s.answers.get(i) or "" for i in range(1, n + 1)]
                              for s in sheets))


def parse_key_csv(text: str) -> AnswerKey:
    _, rows = _rows(text, ("position", "letter"))
    entries = {}
    for row, cells in rows:
        if not re.fullmatch(r"[1-9][0-9]*", cells["position"]):
            raise CsvSchemaError(row, "position", f"not a position: {cells['position']!r}")
        letter = cells["letter"].lower()
        if len(letter) != 1 or letter not in LETTERS:
            raise LetterError(row, "letter", f"not an answer letter: {cells['letter']!r}")
        entries[int(cells["position"])] = letter
    try:
        return AnswerKey(entries)
    except ValueError as exc:
        raise CsvSchemaError(len(rows) + 1, "position", str(exc)) from None


def render_key_csv(key: AnswerKey) -> str:
    return write_csv(("position", "letter"), key.entries.items())


def render_scores_csv(scored: Iterable[tuple[ResponseSheet, TestScore]]) -> str:
    return write_csv(("student", "test_id", "correct", "wrong", "blank", "percentage"),
                     ((s.student, s.test_id, t.correct, t.wrong, t.blank, f"{t.percentage:.4f}")
                      for s, t in scored))


def parse_percentages_csv(text: str) -> dict[str, list[float]]:
    """``student,percentage`` rows (extra columns ignored), grouped by student."""
    _, rows = _rows(text, ("student", "percentage"))
    out: dict[str, list[float]] = {}
    for row, cells in rows:
        pct = _number(cells["percentage"], row, "percentage")
        if not 0 <= pct <= 100:
            raise CsvSchemaError(row, "percentage", f"must be within [0, 100], got {pct}")
        out.setdefault(cells["student"], []).append(pct)
    return out


def parse_counts_csv(text: str) -> dict[str, int]:
    _, rows = _rows(text, ("student", "count"))
    counts = {}
    for row, cells in rows:
        if not re.fullmatch(r"[0-9]+", cells["count"]):
            raise CsvSchemaError(row, "count", f"not a non-negative integer: {cells['count']!r}")
        counts[cells["student"]] = counts.get(cells["student"], 0) + int(cells["count"])
    return counts
