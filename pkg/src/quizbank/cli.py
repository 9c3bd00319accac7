"""Command line front end.

Exit status is 0 on success, 1 when an input is rejected (the message names
the file) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import csvio
from .analytics import (DEFAULT_TEST_WEIGHT, ScoringPolicy, aggregate_best_k,
                        course_percentage, pct_to_grade, score_response)
from .assemble import assemble_test
from .bank import Dedup, contribution_stats, merge_banks, render_contributions
from .errors import QuizError
from .export import export_gift, export_html, render_pdf, test_as_bank
from .jqz import parse_bank, serialize_bank
from .model import AssemblyConfig, validate_question
from .reports import render_anova, render_summary, render_tukey, to_json
from .stats import group_summary, one_way_anova, split_by_group, tukey_hsd


class InputError(Exception):
    def __init__(self, path, cause):
        self.path = path
        super().__init__(f"{path}: {cause}")


def _read_bank(path: str):
    try:
        return parse_bank(Path(path).read_bytes(), source=path)
    except (QuizError, OSError) as exc:
        raise InputError(path, exc) from exc


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(path, exc) from exc


def _parse(path: str, parser):
    text = _read_text(path)
    try:
        return parser(text)
    except QuizError as exc:
        raise InputError(path, exc) from exc


def _write(path: str, data) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    Path(path).write_bytes(data)


def cmd_merge(args, out) -> int:
    banks = [_read_bank(p) for p in args.inputs]
    dedup = Dedup.NORMALIZED_TEXT if args.dedup else Dedup.OFF
    title = args.title if args.title is not None else Path(args.output).stem
    merged = merge_banks(banks, dedup, title=title)
    _write(args.output, serialize_bank(merged))
    out.write(f"{args.output}: {len(merged)} questions from {len(banks)} file(s)\n")
    return 0


def cmd_validate(args, out) -> int:
    status = 0
    for path in args.inputs:
        try:
            bank = _read_bank(path)
        except InputError as exc:
            out.write(f"{exc}\n")
            status = 1
            continue
        issues = [(q, issue) for q in bank.questions for issue in validate_question(q)]
        for q, issue in issues:
            out.write(f"{path}: {q.id}: {issue.kind} ({issue.field}): {issue.message}\n")
        if issues:
            status = 1
        out.write(f"{path}: {len(bank)} questions, {len(issues)} issues\n")
    return status


def cmd_assemble(args, out) -> int:
    bank = _read_bank(args.bank)
    cfg = AssemblyConfig(seed=args.seed, subset_size=args.subset,
                         shuffle_questions=args.shuffle_questions,
                         shuffle_answers=args.shuffle_answers, title=args.title,
                         subtitle=args.subtitle, instructions=args.instructions,
                         answer_table=args.answer_table)
    try:
        test = assemble_test(bank, cfg)
    except QuizError as exc:
        raise InputError(args.bank, exc) from exc
    if args.pdf:
        rendered = render_pdf(test)
        _write(args.pdf, rendered.data)
        if rendered.substitutions:
            sys.stderr.write(f"{args.pdf}: {rendered.substitutions} character(s) outside "
                             "Latin-1 printed as '?'\n")
    if args.html:
        _write(args.html, export_html(test, reveal_key=args.reveal_key))
    if args.gift:
        _write(args.gift, export_gift(test_as_bank(test)))
    if args.key:
        _write(args.key, csvio.render_key_csv(test.key))
    out.write(f"assembled {len(test.items)} questions (seed {cfg.seed})\n")
    return 0


def cmd_score(args, out) -> int:
    key = _parse(args.key, csvio.parse_key_csv)
    sheets = _parse(args.responses, csvio.parse_responses_csv)
    policy = ScoringPolicy(penalty_per_wrong=args.penalty)
    try:
        scored = [(s, score_response(s, key, policy)) for s in sheets]
    except QuizError as exc:
        raise InputError(args.responses, exc) from exc
    if args.json:
        out.write(to_json([{"student": s.student, "test_id": s.test_id, **dataclasses.asdict(t)}
                           for s, t in scored]))
    else:
        out.write(csvio.render_scores_csv(scored))
    return 0


def cmd_aggregate(args, out) -> int:
    scores = _parse(args.scores, csvio.parse_percentages_csv)
    exams = _parse(args.exam, csvio.parse_percentages_csv) if args.exam else None
    rows = []
    for student, pcts in scores.items():
        row = {"student": student, "tests": len(pcts),
               "best_k": aggregate_best_k(pcts, args.best)}
        if exams is not None:
            if student not in exams or len(exams[student]) != 1:
                raise InputError(args.exam, f"expected exactly one exam result for {student!r}")
            row["exam"] = exams[student][0]
            row["course"] = course_percentage(row["best_k"], row["exam"], args.weight)
            row["grade"], row["letter"], row["points"] = pct_to_grade(row["course"])
        rows.append(row)
    if args.json:
        out.write(to_json(rows))
        return 0
    header = list(rows[0]) if rows else ["student", "tests", "best_k"]
    out.write(csvio.write_csv(header, ([f"{v:.4f}" if isinstance(v, float) else v
                                     for v in r.values()] for r in rows)))
    return 0


def cmd_stats(args, out) -> int:
    if args.kind == "contributions":
        counts = _parse(args.input, csvio.parse_counts_csv)
        try:
            stats = contribution_stats(counts)
        except QuizError as exc:
            raise InputError(args.input, exc) from exc
        out.write(to_json(stats) if args.json else render_contributions(stats))
        return 0

    records = _parse(args.input, csvio.parse_grades_csv)
    groups = split_by_group(records)
    try:
        if args.kind == "summary":
            if args.json:
                out.write(to_json([group_summary(m) for m in groups.values()]))
            else:
                out.write(render_summary(records))
        elif args.kind == "anova":
            result = one_way_anova([[r.points for r in m] for m in groups.values()])
            out.write(to_json(result) if args.json else render_anova(result))
        else:
            contrasts = tukey_hsd([(g, [r.points for r in m]) for g, m in groups.items()],
                                  alpha=args.alpha)
            out.write(to_json(contrasts) if args.json else render_tukey(contrasts))
    except QuizError as exc:
        raise InputError(args.input, exc) from exc
    return 0


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _unit(text: str) -> float:
    value = float(text)
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError("must be within [0, 1]")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quizbank", description=(
        "Merge student question files, assemble seeded tests, score them and "
        "analyse grades."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("merge", help="concatenate question files into one bank")
    p.add_argument("output")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--dedup", action="store_true",
                   help="drop repeated questions (whitespace/case-insensitive)")
    p.add_argument("--title", help="bank title (default: output file name)")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("validate", help="check question files")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("assemble", help="build a test from a bank")
    p.add_argument("bank")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--subset", type=_positive)
    p.add_argument("--shuffle-questions", action="store_true")
    p.add_argument("--shuffle-answers", action="store_true")
    p.add_argument("--title", default="")
    p.add_argument("--subtitle", default="")
    p.add_argument("--instructions", default="")
    p.add_argument("--answer-table", action="store_true", help="append an answer key page to the PDF")
    p.add_argument("--pdf", metavar="F")
    p.add_argument("--html", metavar="F")
    p.add_argument("--reveal-key", action="store_true", help="include the key in the HTML page")
    p.add_argument("--gift", metavar="F")
    p.add_argument("--key", metavar="F", help="write the answer key as position,letter CSV")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("score", help="score response sheets against a key")
    p.add_argument("key")
    p.add_argument("responses")
    p.add_argument("--penalty", type=_non_negative, default=0.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("aggregate", help="best-k test average and course blend")
    p.add_argument("scores")
    p.add_argument("--best", type=_positive, required=True)
    p.add_argument("--weight", type=_unit)
    p.add_argument("--exam")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("stats", help="grade statistics")
    p.add_argument("kind", choices=("summary", "anova", "tukey", "contributions"))
    p.add_argument("input")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "assemble" and not (args.pdf or args.html or args.gift or args.key):
        parser.print_usage(sys.stderr)
        sys.stderr.write("quizbank assemble: give at least one of --pdf, --html, --gift, --key\n")
        return 2
    if args.command == "aggregate":
        if args.weight is not None and not args.exam:
            sys.stderr.write("quizbank aggregate: --weight needs --exam\n")
            return 2
        if args.weight is None:
            args.weight = DEFAULT_TEST_WEIGHT
    if args.command == "stats" and not 0 < args.alpha < 1:
        sys.stderr.write("quizbank stats: --alpha must be within (0, 1)\n")
        return 2
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"quizbank: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
