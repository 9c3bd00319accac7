"""Builders and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import unicodedata

from hypothesis import strategies as st

from quizbank.model import Alternative, Question, QuestionBank

# Published mark counts per group, best grade first (A+, A, B/C, D, E/F).
MARK_COUNTS = {
    "CG": (2, 4, 46, 60, 110),
    "TG": (6, 15, 32, 69, 88),
    "MG-P": (7, 15, 22, 37, 31),
    "MG-I": (18, 45, 49, 57, 56),
}
BUCKETS = ("A+", "A", "B/C", "D", "E/F")

# Filled by test_acceptance, printed in the terminal summary.
ACCEPTANCE_LINES = []


def mark_counts(group):
    return dict(zip(BUCKETS, MARK_COUNTS[group]))


def question(qid, stem, texts, correct=0, **meta):
    alts = tuple(Alternative(t, i == correct) for i, t in enumerate(texts))
    return Question(qid, stem, alts, **meta)


def synthetic_bank(n, title="Synthetic", n_alternatives=4, prefix="q"):
    """``n`` distinct questions; question i has its correct answer at i % n_alternatives."""
    qs = []
    for i in range(1, n + 1):
        texts = [f"Answer {i}-{j}" for j in range(n_alternatives)]
        qs.append(question(f"{prefix}{i}", f"Question number {i}?", texts,
                           correct=i % n_alternatives))
    return QuestionBank(title, tuple(qs), (f"{title}.jqz",))


_xml_chars = st.characters(blacklist_categories=("Cs", "Cc", "Cn"),
                           whitelist_characters="\t\n\r")
xml_text = st.text(_xml_chars, max_size=30)
nonblank_text = xml_text.filter(lambda s: s.strip() != "")
opt_text = st.one_of(st.none(), xml_text)


@st.composite
def questions(draw, qid):
    n = draw(st.integers(2, 6))
    texts = draw(st.lists(nonblank_text, min_size=n, max_size=n))
    correct = draw(st.integers(0, n - 1))
    alts = tuple(Alternative(t, i == correct, draw(opt_text)) for i, t in enumerate(texts))
    return Question(qid, draw(nonblank_text), alts,
                    author=draw(opt_text), topic=draw(opt_text),
                    created=draw(st.one_of(st.none(), st.integers(0, 2**40))))


@st.composite
def banks(draw, max_questions=6):
    n = draw(st.integers(0, max_questions))
    ids = draw(st.lists(nonblank_text, min_size=n, max_size=n, unique=True))
    qs = tuple(draw(questions(qid)) for qid in ids)
    return QuestionBank(draw(xml_text), qs, ("gen.jqz",))


# Plain seeded generators with the same alphabet as the strategies above, for
# loops too long to run through hypothesis within a time budget.
_ASCII = "".join(chr(c) for c in range(0x20, 0x7F))


def random_char(rng):
    roll = rng.random()
    if roll < 0.6:
        return rng.choice(_ASCII)
    if roll < 0.7:
        return rng.choice("\t\n\r ")
    while True:
        c = chr(rng.randrange(0x80, 0x110000))
        if unicodedata.category(c) not in ("Cs", "Cc", "Cn"):
            return c


def random_text(rng, max_size=30, nonblank=False):
    while True:
        text = "".join(random_char(rng) for _ in range(rng.randint(0, max_size)))
        if not nonblank or text.strip():
            return text


def random_optional(rng):
    return None if rng.random() < 0.5 else random_text(rng)


def random_bank(rng, max_questions=6):
    qs = []
    ids = set()
    for _ in range(rng.randint(0, max_questions)):
        qid = random_text(rng, nonblank=True)
        if qid in ids:
            continue
        ids.add(qid)
        n = rng.randint(2, 6)
        correct = rng.randrange(n)
        alts = tuple(Alternative(random_text(rng, nonblank=True), i == correct, random_optional(rng))
                     for i in range(n))
        created = None if rng.random() < 0.5 else rng.randrange(2**40)
        qs.append(Question(qid, random_text(rng, nonblank=True), alts, author=random_optional(rng),
                           topic=random_optional(rng), created=created))
    return QuestionBank(random_text(rng), tuple(qs), ("gen.jqz",))
