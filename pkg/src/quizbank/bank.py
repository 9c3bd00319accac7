"""Bank-level operations: merging submissions and contribution statistics."""

from __future__ import annotations

import math
import re
from dataclasses import replace
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import EmptyInput
from .model import ContributionStats, Question, QuestionBank

# Question-count buckets; the last one is open-ended.
CONTRIBUTION_BUCKETS = (("1", 1, 1), ("2-4", 2, 4), ("5-9", 5, 9), ("10+", 10, None))

_WS = re.compile(r"\s+")


class Dedup(str, Enum):
    OFF = "off"
    NORMALIZED_TEXT = "normalized-text"


def normalize_text(text: str) -> str:
    return _WS.sub(" ", text.strip()).casefold()


def question_fingerprint(q: Question) -> tuple:
    return normalize_text(q.stem), tuple(sorted(normalize_text(a.text) for a in q.alternatives))


def merge_banks(banks: Sequence[QuestionBank], dedup: Union[Dedup, str] = Dedup.OFF,
                title: Optional[str] = None) -> QuestionBank:
    """Concatenate banks in order, optionally dropping repeated questions.

    The merged questions are renumbered ``q1``, ``q2``, ... so ids are unique
    whatever the inputs used. The title defaults to the first bank's.
    """
    dedup = Dedup(dedup)
    seen = set()
    merged = []
    for bank in banks:
        for q in bank.questions:
            if dedup is Dedup.NORMALIZED_TEXT:
                fp = question_fingerprint(q)
                if fp in seen:
                    continue
                seen.add(fp)
            merged.append(q)
    if title is None:
        title = banks[0].title if banks else ""
    questions = tuple(replace(q, id=f"q{i}") for i, q in enumerate(merged, start=1))
    sources = tuple(s for bank in banks for s in bank.sources)
    return QuestionBank(title, questions, sources)


def contribution_stats(counts: Union[Mapping[str, int], Iterable[int]]) -> ContributionStats:
    """Summarize how many questions each student posted.

    Students with a zero count did not contribute and are left out of both
    the buckets and the moments. Standard deviation uses divisor n.
    """
    values = counts.values() if isinstance(counts, Mapping) else counts
    included = []
    for c in values:
        if isinstance(c, bool) or int(c) != c or c < 0:
            raise ValueError(f"question counts must be non-negative integers, got {c!r}")
        if c >= 1:
            included.append(int(c))
    if not included:
        raise EmptyInput("no student posted any question")

    n = len(included)
    buckets = {}
    for label, lo, hi in CONTRIBUTION_BUCKETS:
        hits = sum(1 for c in included if c >= lo and (hi is None or c <= hi))
        buckets[label] = 100.0 * hits / n
    mean = sum(included) / n
    std = math.sqrt(sum((c - mean) ** 2 for c in included) / n)
    return ContributionStats(tuple(included), buckets, mean, std)


def render_contributions(stats: ContributionStats) -> str:
    rows = [("One", f"{stats.buckets['1']:.2f}%"),
            ("[2-4]", f"{stats.buckets['2-4']:.2f}%"),
            ("[5-9]", f"{stats.buckets['5-9']:.2f}%"),
            ("10 or more", f"{stats.buckets['10+']:.2f}%"),
            ("Mean", f"{stats.mean:.2f}"),
            ("Standard Deviation", f"{stats.std:.2f}")]
    head = ("#Questions uploaded per test", "Percentage of students")
    width = max(len(head[0]), *(len(r[0]) for r in rows))
    lines = [f"{head[0]:<{width}}  {head[1]}"]
    lines += [f"{label:<{width}}  {value}" for label, value in rows]
    return "\n".join(lines) + "\n"
