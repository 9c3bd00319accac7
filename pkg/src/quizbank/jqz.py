"""Read and write JQuiz-style question files.

The accepted document shape is::

    <?xml version="1.0" encoding="UTF-8"?>
    <hotpot-jquiz-file>
      <data>
        <title>STRING</title>
        <question-record id=".." author=".." topic=".." created="..">
          <question>STRING</question>
          <answers>
            <answer>
              <text>STRING</text>
              <correct>0|1</correct>
              <feedback>STRING</feedback>
            </answer>
          </answers>
        </question-record>
      </data>
    </hotpot-jquiz-file>

``question-record`` repeats 0..N times, ``answer`` 2..26 times, and
``feedback`` is optional.  The four ``question-record`` attributes are all
optional; they carry bank metadata so that a write/read cycle is lossless.
Anything else (unknown elements or attributes, stray text, DTDs, a non
UTF-8 encoding) is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional
from xml.parsers import expat

from .errors import (EmptyAnswer, EmptyStem, MalformedXml, MultipleCorrect,
                     NoCorrect, SchemaViolation)
from .model import MAX_ALTERNATIVES, Alternative, Question, QuestionBank

ROOT = "hotpot-jquiz-file"
RECORD_ATTRS = ("id", "author", "topic", "created")

_DECL = re.compile(rb"^(?:\xef\xbb\xbf)?<\?xml\s[^>]*?encoding\s*=\s*([\"'])([^\"']*)\1")
_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")


@dataclass
class _Node:
    tag: str
    attrs: dict
    children: list = field(default_factory=list)
    chunks: list = field(default_factory=list)

    @property
    def text(self) -> str:
        return "".join(self.chunks)


def _build_tree(doc: bytes) -> _Node:
    try:
        doc.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedXml(f"not valid UTF-8 at byte {exc.start}") from None
    m = _DECL.match(doc)
    if m and m.group(2).decode("ascii", "replace").lower() not in ("utf-8", "utf8"):
        raise MalformedXml(f"unsupported encoding {m.group(2).decode('ascii', 'replace')!r}; "
                           "documents must be UTF-8")

    parser = expat.ParserCreate(encoding="UTF-8")
    parser.buffer_text = True
    stack: list[_Node] = []
    roots: list[_Node] = []

    def start(tag, attrs):
        node = _Node(tag, attrs)
        (stack[-1].children if stack else roots).append(node)
        stack.append(node)

    def end(tag):
        stack.pop()

    def chars(data):
        if stack:
            stack[-1].chunks.append(data)

    def no_dtd(*args):
        raise MalformedXml(f"line {parser.CurrentLineNumber}: DTDs and entity "
                           "declarations are not accepted")

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    parser.StartDoctypeDeclHandler = no_dtd
    parser.EntityDeclHandler = no_dtd
    try:
        parser.Parse(doc, True)
    except expat.ExpatError as exc:
        raise MalformedXml(str(exc)) from None
    return roots[0]


def _container(node: _Node, path: str, allowed_attrs: tuple = ()) -> None:
    for name in node.attrs:
        if name not in allowed_attrs:
            raise SchemaViolation(path, f"unexpected attribute {name!r}")
    if node.text.strip():
        raise SchemaViolation(path, "unexpected text content")


def _leaf(node: _Node, path: str) -> str:
    if node.attrs:
        raise SchemaViolation(path, f"unexpected attribute {next(iter(node.attrs))!r}")
    if node.children:
        raise SchemaViolation(f"{path}/{node.children[0].tag}", "unexpected element")
    return node.text


class _Children:
    """Cursor over an element's children enforcing a fixed order."""

    def __init__(self, node: _Node, path: str):
        self.nodes = node.children
        self.path = path
        self.pos = 0
        self.counts: dict[str, int] = {}

    def _take(self, tag: str) -> tuple[_Node, str]:
        node = self.nodes[self.pos]
        self.pos += 1
        self.counts[tag] = self.counts.get(tag, 0) + 1
        return node, f"{self.path}/{tag}[{self.counts[tag]}]"

    def required(self, tag: str) -> tuple[_Node, str]:
        if self.pos >= len(self.nodes) or self.nodes[self.pos].tag != tag:
            raise SchemaViolation(self.path, f"missing required element <{tag}>")
        return self._take(tag)

    def optional(self, tag: str) -> Optional[tuple[_Node, str]]:
        if self.pos < len(self.nodes) and self.nodes[self.pos].tag == tag:
            return self._take(tag)
        return None

    def finish(self) -> None:
        if self.pos < len(self.nodes):
            raise SchemaViolation(f"{self.path}/{self.nodes[self.pos].tag}",
                                  "unexpected element")


def _parse_answer(node: _Node, path: str, ordinal: int) -> Alternative:
    _container(node, path)
    kids = _Children(node, path)
    text = _leaf(*kids.required("text"))
    flag_node, flag_path = kids.required("correct")
    flag = _leaf(flag_node, flag_path).strip()
    if flag not in ("0", "1"):
        raise SchemaViolation(flag_path, f"expected 0 or 1, got {flag!r}")
    fb = kids.optional("feedback")
    feedback = _leaf(*fb) if fb else None
    kids.finish()
    if not text.strip():
        raise EmptyAnswer(ordinal, f"{path}/text is empty")
    return Alternative(text, flag == "1", feedback)


def _parse_record(node: _Node, path: str, ordinal: int, source: str) -> Question:
    _container(node, path, RECORD_ATTRS)
    created = node.attrs.get("created")
    if created is not None:
        if not re.fullmatch(r"-?[0-9]+", created):
            raise SchemaViolation(path, f"attribute 'created' must be an integer, got {created!r}")
        created = int(created)

    kids = _Children(node, path)
    stem = _leaf(*kids.required("question"))
    answers_node, answers_path = kids.required("answers")
    kids.finish()
    _container(answers_node, answers_path)
    answer_kids = _Children(answers_node, answers_path)
    alternatives = []
    while (hit := answer_kids.optional("answer")) is not None:
        alternatives.append(_parse_answer(*hit, ordinal))
    answer_kids.finish()
    if not 2 <= len(alternatives) <= MAX_ALTERNATIVES:
        raise SchemaViolation(answers_path, f"{len(alternatives)} <answer> elements; "
                              f"between 2 and {MAX_ALTERNATIVES} required")
    if not stem.strip():
        raise EmptyStem(ordinal, "question text is empty")
    n_correct = sum(a.correct for a in alternatives)
    if n_correct == 0:
        raise NoCorrect(ordinal, "no answer is marked correct")
    if n_correct > 1:
        raise MultipleCorrect(ordinal, f"{n_correct} answers are marked correct")

    qid = node.attrs.get("id", f"{source}#{ordinal}")
    return Question(qid, stem, tuple(alternatives), node.attrs.get("author"),
                    node.attrs.get("topic"), created)


def parse_bank(doc: bytes, source: str = "<memory>") -> QuestionBank:
    """Parse a question file into a bank.

    Questions without an ``id`` attribute get ``"<source>#<ordinal>"``.
    Every failure is reported as a :class:`~quizbank.errors.JqzError`
    subclass.
    """
    root = _build_tree(bytes(doc))
    path = f"/{root.tag}"
    if root.tag != ROOT:
        raise SchemaViolation(path, f"root element must be <{ROOT}>")
    _container(root, path)
    top = _Children(root, path)
    data, data_path = top.required("data")
    top.finish()

    _container(data, data_path)
    kids = _Children(data, data_path)
    title = _leaf(*kids.required("title"))
    questions = []
    seen_ids: set[str] = set()
    while (hit := kids.optional("question-record")) is not None:
        q = _parse_record(*hit, len(questions) + 1, source)
        if q.id in seen_ids:
            raise SchemaViolation(hit[1], f"duplicate question id {q.id!r}")
        seen_ids.add(q.id)
        questions.append(q)
    kids.finish()
    return QuestionBank(title, tuple(questions), (source,))


def _escape(text: str, attr: bool = False) -> str:
    bad = _XML_ILLEGAL.search(text)
    if bad:
        raise ValueError(f"character U+{ord(bad.group()):04X} cannot be stored in XML")
    text = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    text = text.replace("\r", "&#13;")
    if attr:
        text = text.replace('"', "&quot;").replace("\n", "&#10;").replace("\t", "&#9;")
    return text


def serialize_bank(bank: QuestionBank) -> bytes:
    """Write ``bank`` in canonical form (fixed order, 2-space indent, LF)."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f"<{ROOT}>",
           "  <data>",
           f"    <title>{_escape(bank.title)}</title>"]
    for q in bank.questions:
        attrs = [("id", q.id), ("author", q.author), ("topic", q.topic),
                 ("created", None if q.created is None else str(q.created))]
        attr_text = "".join(f' {name}="{_escape(value, attr=True)}"'
                            for name, value in attrs if value is not None)
        out.append(f"    <question-record{attr_text}>")
        out.append(f"      <question>{_escape(q.stem)}</question>")
        out.append("      <answers>")
        for alt in q.alternatives:
            out.append("        <answer>")
            out.append(f"          <text>{_escape(alt.text)}</text>")
            out.append(f"          <correct>{int(alt.correct)}</correct>")
            if alt.feedback is not None:
                out.append(f"          <feedback>{_escape(alt.feedback)}</feedback>")
            out.append("        </answer>")
        out.append("      </answers>")
        out.append("    </question-record>")
    out.append("  </data>")
    out.append(f"</{ROOT}>")
    return ("\n".join(out) + "\n").encode("utf-8")
