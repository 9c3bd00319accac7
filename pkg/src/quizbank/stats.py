"""Group summaries, one-way ANOVA and Tukey HSD for grade-point data."""

from __future__ import annotations

import math
from typing import Mapping, Sequence, Union

from .errors import DegenerateInput, EmptyGroup
from .model import (GRADE_LETTERS, AnovaResult, GradeRecord, GroupSummary,
                    LetterBucket, TukeyContrast)
from .srange import srange_cdf, srange_quantile

SQRT2 = math.sqrt(2.0)


def _bucket(key: Union[LetterBucket, str]) -> LetterBucket:
    if isinstance(key, LetterBucket):
        return key
    try:
        return LetterBucket(key)
    except ValueError:
        return GRADE_LETTERS[key]


def expand_mark_distribution(counts: Mapping[Union[LetterBucket, str], int],
                             group: str) -> list[GradeRecord]:
    """One synthetic record per counted student, best grades first."""
    tallies = {}
    for key, n in counts.items():
        if int(n) != n or n < 0:
            raise ValueError(f"count for {key!r} must be a non-negative integer")
        bucket = _bucket(key)
        tallies[bucket] = tallies.get(bucket, 0) + int(n)
    records = []
    for bucket in LetterBucket:
        for _ in range(tallies.get(bucket, 0)):
            records.append(GradeRecord(f"{group}-{len(records) + 1:04d}", group,
                                       bucket.points, bucket))
    return records


def group_summary(records: Sequence[GradeRecord]) -> GroupSummary:
    if not records:
        raise EmptyGroup("cannot summarize an empty group")
    labels = {r.group for r in records}
    if len(labels) > 1:
        raise ValueError(f"records from several groups: {sorted(labels)}")
    points = [r.points for r in records]
    n = len(points)
    mean = math.fsum(points) / n
    std = math.sqrt(math.fsum((p - mean) ** 2 for p in points) / n)
    return GroupSummary(records[0].group, n, mean, std)


def split_by_group(records: Sequence[GradeRecord]) -> dict[str, list[GradeRecord]]:
    """Records per group label, in order of first appearance."""
    groups: dict[str, list[GradeRecord]] = {}
    for r in records:
        groups.setdefault(r.group, []).append(r)
    return groups


def one_way_anova(groups: Sequence[Sequence[float]]) -> AnovaResult:
    k = len(groups)
    if k < 2:
        raise DegenerateInput(f"ANOVA needs at least 2 groups, got {k}")
    if any(len(g) == 0 for g in groups):
        raise DegenerateInput("every group needs at least one observation")
    n_total = sum(len(g) for g in groups)
    if n_total <= k:
        raise DegenerateInput("no within-group degrees of freedom (n_total <= k)")

    means = [math.fsum(g) / len(g) for g in groups]
    grand = math.fsum(x for g in groups for x in g) / n_total
    ss_between = math.fsum(len(g) * (m - grand) ** 2 for g, m in zip(groups, means))
    ss_within = math.fsum((x - m) ** 2 for g, m in zip(groups, means) for x in g)
    df_between, df_within = k - 1, n_total - k
    if ss_within == 0:
        raise DegenerateInput("zero within-group variance; F is undefined")
    ms_between = ss_between / df_between
    ms_within = ss_within / df_within
    return AnovaResult(k, n_total, ss_between, ss_within, df_between, df_within,
                       ms_between, ms_within, ms_between / ms_within)


def tukey_hsd(groups: Sequence[tuple[str, Sequence[float]]],
              alpha: float = 0.05) -> list[TukeyContrast]:
    """All pairwise Tukey-Kramer contrasts after a one-way ANOVA.

    Groups are ranked by mean, highest first. Each group is compared with
    every lower-ranked group, starting from the lowest, so with four groups
    ranked 1..4 the order is 1-4, 1-3, 1-2, 2-4, 2-3, 3-4.
    Differences and standardized differences follow the ``/sqrt(2)``
    convention: ``critical = q(1 - alpha; k, df) / sqrt(2)``.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must be within (0, 1), got {alpha!r}")
    labels = [label for label, _ in groups]
    if len(set(labels)) != len(labels):
        raise ValueError("group labels must be distinct")
    anova = one_way_anova([values for _, values in groups])
    k, df, mse = anova.k, anova.df_within, anova.ms_within

    stats = [(label, math.fsum(v) / len(v), len(v)) for label, v in groups]
    ranked = sorted(stats, key=lambda s: -s[1])
    critical = srange_quantile(1 - alpha, k, df) / SQRT2

    contrasts = []
    for a in range(k):
        for b in range(k - 1, a, -1):
            (li, mi, ni), (lj, mj, nj) = ranked[a], ranked[b]
            diff = mi - mj
            se = math.sqrt(mse * (1 / ni + 1 / nj))
            standardized = abs(diff) / se
            p = min(1.0, max(0.0, 1.0 - srange_cdf(standardized * SQRT2, k, df)))
            contrasts.append(TukeyContrast((li, lj), abs(diff), se, standardized,
                                           critical, p, standardized > critical))
    return contrasts
