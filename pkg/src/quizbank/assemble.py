"""Seeded, reproducible test assembly.

Randomness comes from SplitMix64 with the state threaded explicitly through
every call, so the same bank and configuration always yield the same test,
in any conforming implementation.  Draws are consumed in a fixed order:

1. subset selection (only when ``subset_size`` is set),
2. question shuffle (only when ``shuffle_questions``),
3. one alternative shuffle per question, in output order (only when
   ``shuffle_answers``).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, TypeVar

from .errors import EmptyBank, SubsetTooLarge
from .model import (AnswerKey, AssembledTest, AssemblyConfig, QuestionBank,
                    TestItem, letter_for)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


@dataclass(frozen=True)
class RngState:
    state: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "state", self.state & MASK64)


def rng_next(s: RngState) -> tuple[int, RngState]:
    """One SplitMix64 step: returns (64-bit output, next state)."""
    state = (s.state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), RngState(state)


def bounded_uniform(s: RngState, n: int) -> tuple[int, RngState]:
    """Unbiased index in ``[0, n)`` by rejection sampling."""
    if n < 1:
        raise ValueError("n must be positive")
    limit = (1 << 64) - (1 << 64) % n
    while True:
        value, s = rng_next(s)
        if value < limit:
            return value % n, s


def shuffle(items: Sequence[T], s: RngState) -> tuple[list[T], RngState]:
    """Descending Fisher-Yates; returns a new list and the advanced state."""
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j, s = bounded_uniform(s, i + 1)
        out[i], out[j] = out[j], out[i]
    return out, s


def select_subset(n: int, k: int, s: RngState) -> tuple[list[int], RngState]:
    """Pick ``k`` distinct indices of ``range(n)`` with a partial Fisher-Yates.

    Position ``i`` (ascending from 0) is swapped with a uniform position in
    ``[i, n)``; the first ``k`` entries form the sample, in draw order.
    """
    idx = list(range(n))
    for i in range(k):
        r, s = bounded_uniform(s, n - i)
        j = i + r
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:k], s


def assemble_test(bank: QuestionBank, cfg: AssemblyConfig) -> AssembledTest:
    n = len(bank.questions)
    if n == 0:
        raise EmptyBank("cannot assemble a test from an empty bank")
    if cfg.subset_size is not None and cfg.subset_size > n:
        raise SubsetTooLarge(f"subset of {cfg.subset_size} requested from a bank of {n} questions")

    s = RngState(cfg.seed)
    if cfg.subset_size is None:
        chosen = list(range(n))
    else:
        chosen, s = select_subset(n, cfg.subset_size, s)
        # without a question shuffle the sample keeps bank order
        chosen.sort()
    if cfg.shuffle_questions:
        chosen, s = shuffle(chosen, s)

    items = []
    key = {}
    for position, index in enumerate(chosen, start=1):
        q = bank.questions[index]
        if cfg.shuffle_answers:
            alts, s = shuffle(q.alternatives, s)
            q = replace(q, alternatives=tuple(alts))
        items.append(TestItem(position, q))
        key[position] = letter_for(q.correct_index)
    return AssembledTest(cfg, tuple(items), AnswerKey(key))
