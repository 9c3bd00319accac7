"""Moodle GIFT text export."""

from __future__ import annotations

import re

from ..model import Question, QuestionBank

_SPECIAL = re.compile(r"([~=#{}:\\])")


def gift_escape(text: str) -> str:
    text = _SPECIAL.sub(r"\\\1", text)
    return text.replace("\r\n", "\n").replace("\r", "\n").replace("\n", "\\n")


def gift_unescape(text: str) -> str:
    return re.sub(r"\\(.)", lambda m: "\n" if m.group(1) == "n" else m.group(1), text)


def gift_stanza(q: Question) -> str:
    answers = []
    for alt in q.alternatives:
        mark = "=" if alt.correct else "~"
        answer = mark + gift_escape(alt.text)
        if alt.feedback:
            answer += "#" + gift_escape(alt.feedback)
        answers.append(answer)
    return f"::{gift_escape(q.id)}::{gift_escape(q.stem)} {{ {' '.join(answers)} }}"


def export_gift(bank: QuestionBank) -> str:
    """One stanza per question, separated by blank lines; '' for no questions."""
    if not bank.questions:
        return ""
    return "\n\n".join(gift_stanza(q) for q in bank.questions) + "\n"
