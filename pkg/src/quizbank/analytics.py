"""Scoring of response sheets, grade aggregation and the ECTS grade scale."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyList, PositionMismatch, RangeError
from .model import AnswerKey, LetterBucket, ResponseSheet, TestScore, index_for

DEFAULT_TEST_WEIGHT = 0.15
DEFAULT_BEST_K = 3


@dataclass(frozen=True)
class ScoringPolicy:
    points_per_correct: float = 1.0
    penalty_per_wrong: float = 0.0

    def __post_init__(self) -> None:
        if not self.points_per_correct > 0:
            raise ValueError("points_per_correct must be positive")
        if not self.penalty_per_wrong >= 0:
            raise ValueError("penalty_per_wrong must be non-negative")

    @property
    def blanks_score_zero(self) -> bool:
        return True


@dataclass(frozen=True)
class EctsBand:
    lower: float
    upper: float
    spanish: str
    letter: str
    points: int


@dataclass(frozen=True)
class EctsScale:
    """Bands ordered from the top grade down.

    Each band covers ``[lower, upper)``; the top band also includes its upper
    bound, so the bands partition ``[0, 100]``.
    """

    bands: tuple[EctsBand, ...]

    def __post_init__(self) -> None:
        bands = tuple(self.bands)
        object.__setattr__(self, "bands", bands)
        if not bands or bands[0].upper != 100 or bands[-1].lower != 0:
            raise ValueError("bands must span 0..100")
        for hi, lo in zip(bands, bands[1:]):
            if hi.lower != lo.upper:
                raise ValueError(f"gap or overlap between {hi.spanish} and {lo.spanish}")
            if not hi.points > lo.points:
                raise ValueError("points must decrease down the scale")


ECTS_SCALE = EctsScale((
    EctsBand(95, 100, "MH", LetterBucket.A_PLUS.value, 4),
    EctsBand(85, 95, "SB", LetterBucket.A.value, 3),
    EctsBand(65, 85, "NT", LetterBucket.B_C.value, 2),
    EctsBand(50, 65, "AP", LetterBucket.D.value, 1),
    EctsBand(0, 50, "SS", LetterBucket.E_F.value, 0),
))


def score_response(sheet: ResponseSheet, key: AnswerKey,
                   policy: ScoringPolicy = ScoringPolicy()) -> TestScore:
    for pos in sheet.answers:
        if pos not in key.entries:
            raise PositionMismatch(f"{sheet.student}: answer for position {pos}, "
                                   f"but the key has positions 1..{len(key)}")
    correct = wrong = blank = 0
    for pos, expected in key.entries.items():
        given = sheet.answers.get(pos)
        if not given:
            blank += 1
            continue
        index_for(given)
        if given == expected:
            correct += 1
        else:
            wrong += 1
    n = len(key)
    raw = max(0.0, correct * policy.points_per_correct - wrong * policy.penalty_per_wrong)
    percentage = 100.0 * raw / (n * policy.points_per_correct) if n else 0.0
    return TestScore(correct, wrong, blank, percentage)


def aggregate_best_k(test_pcts: Sequence[float], k: int = DEFAULT_BEST_K) -> float:
    """Mean of the ``k`` best results (of all results when fewer than ``k``)."""
    if k < 1:
        raise ValueError("k must be positive")
    if not test_pcts:
        raise EmptyList("no test results to aggregate")
    best = sorted(test_pcts, reverse=True)[:k]
    return sum(best) / len(best)


def course_percentage(test_component: float, exam_component: float,
                      weight: float = DEFAULT_TEST_WEIGHT) -> float:
    for name, value in (("test component", test_component), ("exam component", exam_component)):
        if not 0 <= value <= 100:
            raise RangeError(f"{name} must be within [0, 100], got {value}")
    if not 0 <= weight <= 1:
        raise RangeError(f"weight must be within [0, 1], got {weight}")
    if weight == 0:
        return float(exam_component)
    if weight == 1:
        return float(test_component)
    return weight * test_component + (1 - weight) * exam_component


def pct_to_grade(pct: float, scale: EctsScale = ECTS_SCALE) -> tuple[str, str, int]:
    """Return ``(spanish, letter, points)`` for a percentage in [0, 100]."""
    if not 0 <= pct <= 100:
        raise RangeError(f"percentage must be within [0, 100], got {pct}")
    for i, band in enumerate(scale.bands):
        if band.lower <= pct < band.upper or (i == 0 and pct == band.upper):
            return band.spanish, band.letter, band.points
    raise AssertionError("scale does not cover the percentage")  # unreachable for valid scales
