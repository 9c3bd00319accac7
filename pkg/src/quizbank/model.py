"""Domain types for question banks, assembled tests, scores and grades.

All types are frozen dataclasses holding tuples, so values can be shared
freely.  ``Question`` deliberately accepts broken content so that
:func:`validate_question` can describe what is wrong with it; containers
that need well-formed content (``QuestionBank``, ``GradeRecord``) enforce
their invariants on construction.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

LETTERS = string.ascii_lowercase
MAX_ALTERNATIVES = len(LETTERS)


def letter_for(index: int) -> str:
    return LETTERS[index]


def index_for(letter: str) -> int:
    if len(letter) != 1 or letter not in LETTERS:
        raise ValueError(f"not an answer letter: {letter!r}")
    return LETTERS.index(letter)


@dataclass(frozen=True)
class Alternative:
    text: str
    correct: bool = False
    feedback: Optional[str] = None


@dataclass(frozen=True)
class Question:
    id: str
    stem: str
    alternatives: tuple[Alternative, ...]
    author: Optional[str] = None
    topic: Optional[str] = None
    created: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))

    @property
    def correct_index(self) -> int:
        """Index of the single correct alternative (question must be valid)."""
        hits = [i for i, alt in enumerate(self.alternatives) if alt.correct]
        if len(hits) != 1:
            raise ValueError(f"question {self.id!r} has {len(hits)} correct alternatives")
        return hits[0]


@dataclass(frozen=True)
class Issue:
    kind: str
    field: str
    message: str


def validate_question(q: Question) -> list[Issue]:
    """Return every broken Question/Alternative invariant; empty when valid."""
    issues = []
    if not q.stem.strip():
        issues.append(Issue("EmptyStem", "stem", "stem is empty"))
    n = len(q.alternatives)
    if n < 2:
        issues.append(Issue("TooFewAlternatives", "alternatives",
                            f"{n} alternative(s), at least 2 required"))
    elif n > MAX_ALTERNATIVES:
        issues.append(Issue("TooManyAlternatives", "alternatives",
                            f"{n} alternatives, at most {MAX_ALTERNATIVES} can be lettered"))
    for i, alt in enumerate(q.alternatives):
        if not alt.text.strip():
            issues.append(Issue("EmptyAlternative", f"alternatives[{i}].text",
                                "alternative text is empty"))
    n_correct = sum(alt.correct for alt in q.alternatives)
    if n_correct > 1:
        issues.append(Issue("MultipleCorrect", "alternatives",
                            f"{n_correct} alternatives flagged correct"))
    elif n_correct == 0 and n > 0:
        issues.append(Issue("NoCorrect", "alternatives", "no alternative flagged correct"))
    return issues


@dataclass(frozen=True)
class QuestionBank:
    title: str
    questions: tuple[Question, ...] = ()
    sources: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "questions", tuple(self.questions))
        object.__setattr__(self, "sources", tuple(self.sources))
        seen = set()
        for q in self.questions:
            if q.id in seen:
                raise ValueError(f"duplicate question id {q.id!r}")
            seen.add(q.id)

    def __len__(self) -> int:
        return len(self.questions)


@dataclass(frozen=True)
class AssemblyConfig:
    seed: int
    subset_size: Optional[int] = None
    shuffle_questions: bool = False
    shuffle_answers: bool = False
    title: str = ""
    subtitle: str = ""
    instructions: str = ""
    answer_table: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.subset_size is not None and self.subset_size < 1:
            raise ValueError("subset_size must be positive")


@dataclass(frozen=True)
class AnswerKey:
    entries: Mapping[int, str]

    def __post_init__(self) -> None:
        entries = dict(sorted(self.entries.items()))
        if list(entries) != list(range(1, len(entries) + 1)):
            raise ValueError("answer key positions must be 1..n")
        for letter in entries.values():
            index_for(letter)
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, position: int) -> str:
        return self.entries[position]


@dataclass(frozen=True)
class TestItem:
    __test__ = False

    position: int
    question: Question


@dataclass(frozen=True)
class AssembledTest:
    config: AssemblyConfig
    items: tuple[TestItem, ...]
    key: AnswerKey

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        if [it.position for it in self.items] != list(range(1, len(self.items) + 1)):
            raise ValueError("item positions must be 1..n")
        if len(self.key) != len(self.items):
            raise ValueError("answer key does not cover every item")
        for it in self.items:
            idx = index_for(self.key[it.position])
            alts = it.question.alternatives
            if idx >= len(alts) or not alts[idx].correct:
                raise ValueError(f"key letter for position {it.position} is not the correct alternative")


@dataclass(frozen=True)
class ResponseSheet:
    student: str
    test_id: str
    answers: Mapping[int, Optional[str]] = field(default_factory=dict)


@dataclass(frozen=True)
class TestScore:
    __test__ = False

    correct: int
    wrong: int
    blank: int
    percentage: float

    @property
    def n_items(self) -> int:
        return self.correct + self.wrong + self.blank


class LetterBucket(str, Enum):
    A_PLUS = "A+"
    A = "A"
    B_C = "B/C"
    D = "D"
    E_F = "E/F"

    @property
    def points(self) -> int:
        return BUCKET_POINTS[self]

    @classmethod
    def from_points(cls, points: int) -> "LetterBucket":
        for bucket, p in BUCKET_POINTS.items():
            if p == points:
                return bucket
        raise ValueError(f"grade points must be 0..4, got {points!r}")


BUCKET_POINTS = {
    LetterBucket.A_PLUS: 4,
    LetterBucket.A: 3,
    LetterBucket.B_C: 2,
    LetterBucket.D: 1,
    LetterBucket.E_F: 0,
}

# Single ECTS letters as they appear in grade sheets.
GRADE_LETTERS = {
    "A+": LetterBucket.A_PLUS,
    "A": LetterBucket.A,
    "B": LetterBucket.B_C,
    "C": LetterBucket.B_C,
    "B/C": LetterBucket.B_C,
    "D": LetterBucket.D,
    "E": LetterBucket.E_F,
    "F": LetterBucket.E_F,
    "E/F": LetterBucket.E_F,
}

STANDARD_GROUPS = ("CG", "TG", "MG-P", "MG-I")


@dataclass(frozen=True)
class GradeRecord:
    student: str
    group: str
    points: int
    letter_bucket: LetterBucket

    def __post_init__(self) -> None:
        bucket = LetterBucket(self.letter_bucket)
        object.__setattr__(self, "letter_bucket", bucket)
        if isinstance(self.points, bool) or self.points != bucket.points:
            raise ValueError(
                f"grade {bucket.value} is worth {bucket.points} points, not {self.points!r}")

    @classmethod
    def from_points(cls, student: str, group: str, points: int) -> "GradeRecord":
        return cls(student, group, points, LetterBucket.from_points(points))

    @classmethod
    def from_letter(cls, student: str, group: str, letter: str) -> "GradeRecord":
        bucket = GRADE_LETTERS[letter]
        return cls(student, group, bucket.points, bucket)


@dataclass(frozen=True)
class GroupSummary:
    group: str
    n: int
    mean: float
    std: float


@dataclass(frozen=True)
class AnovaResult:
    k: int
    n_total: int
    ss_between: float
    ss_within: float
    df_between: int
    df_within: int
    ms_between: float
    ms_within: float
    f: float

    @property
    def ss_total(self) -> float:
        return self.ss_between + self.ss_within


@dataclass(frozen=True)
class TukeyContrast:
    pair: tuple[str, str]
    difference: float
    se: float
    standardized: float
    critical: float
    p: float
    significant: bool


@dataclass(frozen=True)
class ContributionStats:
    counts: tuple[int, ...]
    buckets: Mapping[str, float]
    mean: float
    std: float

