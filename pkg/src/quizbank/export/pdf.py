"""Minimal, byte-deterministic PDF 1.4 writer for assembled tests.

Only the standard Helvetica font is used, content streams are stored
uncompressed, and the page geometry is fixed (A4, 72pt margins, 12pt body
text on a 14pt leading).  Characters outside Latin-1 cannot be shown with a
base-14 font; they are drawn as ``?`` and counted.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from ..model import AssembledTest, letter_for

PAGE_WIDTH = 595
PAGE_HEIGHT = 842
MARGIN = 72
BODY_SIZE = 12
LEADING = 14
TITLE_SIZE = 16
TITLE_LEADING = 20
QUESTION_INDENT = 24
ALTERNATIVE_INDENT = 24
ALTERNATIVE_HANG = 18
KEY_COLUMNS = 5
KEY_HEADING = "Answer key"

# Helvetica advance widths (1/1000 em) for printable ASCII, from the AFM.
_ASCII_WIDTHS = [
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278, 584, 584, 584, 556,
    1015, 667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, 722, 778,
    667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, 278, 278, 278, 469, 556,
    333, 556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, 556, 556,
    556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584,
]
_DEFAULT_WIDTH = 556


def char_width(ch: str) -> int:
    code = ord(ch)
    if 32 <= code <= 126:
        return _ASCII_WIDTHS[code - 32]
    base = unicodedata.normalize("NFD", ch)[0]
    if base != ch and 32 <= ord(base) <= 126:
        return _ASCII_WIDTHS[ord(base) - 32]
    return _DEFAULT_WIDTH


def text_width(text: str, size: float) -> float:
    return sum(char_width(ch) for ch in text) * size / 1000.0


def to_latin1(text: str) -> tuple[str, int]:
    """Map text onto the drawable set; returns (text, substitution count)."""
    out = []
    replaced = 0
    for ch in text:
        code = ord(ch)
        if ch == "\t":
            out.append(" ")
        elif 32 <= code <= 126 or 160 <= code <= 255:
            out.append(ch)
        else:
            out.append("?")
            replaced += 1
    return "".join(out), replaced


def wrap(text: str, width: float, size: float) -> list[str]:
    """Greedy wrap on single spaces; over-long words are split by character."""
    lines: list[str] = []
    current = None
    for word in text.split(" "):
        candidate = word if current is None else f"{current} {word}"
        if current is None or text_width(candidate, size) <= width:
            current = candidate
        else:
            lines.append(current)
            current = word
        while text_width(current, size) > width and len(current) > 1:
            cut = len(current) - 1
            while cut > 1 and text_width(current[:cut], size) > width:
                cut -= 1
            lines.append(current[:cut])
            current = current[cut:]
    lines.append(current if current is not None else "")
    return lines


@dataclass(frozen=True)
class PdfRender:
    data: bytes
    substitutions: int


class _Layout:
    def __init__(self):
        self.pages: list[list[str]] = []
        self.ops: list[str] = []
        self.y = 0.0
        self.substitutions = 0
        self.new_page()

    def new_page(self) -> None:
        if self.ops or not self.pages:
            self.ops = []
            self.pages.append(self.ops)
        self.y = PAGE_HEIGHT - MARGIN

    def _advance(self, leading: float) -> None:
        if self.y - leading < MARGIN:
            self.new_page()
        self.y -= leading

    def put(self, x: float, text: str, size: float = BODY_SIZE) -> None:
        self.ops.append(f"BT /F1 {size:g} Tf {x:g} {self.y:g} Td ({_pdf_string(text)}) Tj ET")

    def paragraph(self, text: str, x: float, size: float = BODY_SIZE,
                  leading: float = LEADING, prefix: str = "", hang: float = 0.0) -> None:
        """Write wrapped text at ``x``; a prefix sits in the hanging indent."""
        text, n = to_latin1(text.replace("\r\n", "\n").replace("\r", "\n"))
        self.substitutions += n
        first = True
        body_x = x + hang
        for para in text.split("\n"):
            for line in wrap(para, PAGE_WIDTH - MARGIN - body_x, size):
                self._advance(leading)
                if first and prefix:
                    self.put(x, prefix, size)
                self.put(body_x, line, size)
                first = False

    def gap(self, amount: float) -> None:
        self.y -= amount


def _pdf_string(text: str) -> str:
    return text.replace("\\", "\\\\").replace("(", "\\(").replace(")", "\\)")


def _layout_questions(test: AssembledTest) -> _Layout:
    cfg = test.config
    lay = _Layout()
    if cfg.title:
        lay.paragraph(cfg.title, MARGIN, TITLE_SIZE, TITLE_LEADING)
    if cfg.subtitle:
        lay.paragraph(cfg.subtitle, MARGIN)
    if cfg.instructions:
        lay.gap(LEADING / 2)
        lay.paragraph(cfg.instructions, MARGIN)
    if cfg.title or cfg.subtitle or cfg.instructions:
        lay.gap(LEADING)
    for item in test.items:
        q = item.question
        lay.paragraph(q.stem, MARGIN, prefix=f"{item.position}.", hang=QUESTION_INDENT)
        for i, alt in enumerate(q.alternatives):
            lay.paragraph(alt.text, MARGIN + ALTERNATIVE_INDENT,
                          prefix=f"{letter_for(i)})", hang=ALTERNATIVE_HANG)
        lay.gap(LEADING / 2)
    return lay


def _layout_key(lay: _Layout, test: AssembledTest) -> None:
    entries = list(test.key.entries.items())
    col_width = (PAGE_WIDTH - 2 * MARGIN) / KEY_COLUMNS
    top = PAGE_HEIGHT - MARGIN - TITLE_LEADING - LEADING
    rows = int((top - MARGIN) // LEADING) + 1
    per_page = rows * KEY_COLUMNS
    for start in range(0, len(entries), per_page):
        lay.new_page()
        heading = KEY_HEADING if start == 0 else f"{KEY_HEADING} (continued)"
        lay.paragraph(heading, MARGIN, TITLE_SIZE, TITLE_LEADING)
        chunk = entries[start:start + per_page]
        for n, (pos, letter) in enumerate(chunk):
            col, row = divmod(n, rows)
            lay.y = top - row * LEADING
            lay.put(MARGIN + col * col_width, f"{pos}. {letter}")


def _assemble_file(pages: list[list[str]]) -> bytes:
    objects: list[bytes] = []
    n_pages = len(pages)
    kids = " ".join(f"{4 + 2 * i} 0 R" for i in range(n_pages))
    objects.append(b"<< /Type /Catalog /Pages 2 0 R >>")
    objects.append(f"<< /Type /Pages /Kids [{kids}] /Count {n_pages} >>".encode("ascii"))
    objects.append(b"<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica "
                   b"/Encoding /WinAnsiEncoding >>")
    for i, ops in enumerate(pages):
        content = ("\n".join(ops) + "\n").encode("latin-1")
        objects.append(
            f"<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {PAGE_WIDTH} {PAGE_HEIGHT}] "
            f"/Resources << /Font << /F1 3 0 R >> >> /Contents {5 + 2 * i} 0 R >>".encode("ascii"))
        objects.append(b"<< /Length " + str(len(content)).encode("ascii") + b" >>\nstream\n"
                       + content + b"endstream")

    out = bytearray(b"%PDF-1.4\n%\xe2\xe3\xcf\xd3\n")
    offsets = []
    for num, body in enumerate(objects, start=1):
        offsets.append(len(out))
        out += f"{num} 0 obj\n".encode("ascii") + body + b"\nendobj\n"
    xref_at = len(out)
    out += f"xref\n0 {len(objects) + 1}\n".encode("ascii")
    out += b"0000000000 65535 f \n"
    for off in offsets:
        out += f"{off:010d} 00000 n \n".encode("ascii")
    out += (f"trailer\n<< /Size {len(objects) + 1} /Root 1 0 R >>\n"
            f"startxref\n{xref_at}\n%%EOF").encode("ascii")
    return bytes(out)


def render_pdf(test: AssembledTest) -> PdfRender:
    lay = _layout_questions(test)
    if test.config.answer_table:
        _layout_key(lay, test)
    return PdfRender(_assemble_file(lay.pages), lay.substitutions)


def export_pdf(test: AssembledTest) -> bytes:
    return render_pdf(test).data


# -- reading back our own output (self-checks and tests) --

_OBJ = re.compile(rb"(\d+) 0 obj\n")
_TJ = re.compile(rb"\(((?:\\.|[^\\)])*)\) Tj")


def check_xref(data: bytes) -> list[str]:
    """Compare the xref table against real object offsets; returns problems."""
    problems = []
    m = re.search(rb"startxref\n(\d+)\n%%EOF$", data)
    if not m:
        return ["missing startxref/%%EOF trailer"]
    xref_at = int(m.group(1))
    if data[xref_at:xref_at + 5] != b"xref\n":
        return [f"startxref {xref_at} does not point at the xref table"]
    head = re.match(rb"xref\n0 (\d+)\n", data[xref_at:])
    count = int(head.group(1))
    table = data[xref_at + head.end():]
    for num in range(1, count):
        entry = table[20 * num:20 * num + 20]
        offset = int(entry[:10])
        found = _OBJ.match(data, offset)
        if not found or int(found.group(1)) != num:
            problems.append(f"object {num}: xref offset {offset} is wrong")
    return problems


def page_texts(data: bytes) -> list[list[str]]:
    """Text-show strings of each page, in page order."""
    kids = re.search(rb"/Kids \[([^\]]*)\]", data).group(1)
    page_nums = [int(x) for x in re.findall(rb"(\d+) 0 R", kids)]
    streams = {}
    for m in re.finditer(rb"(\d+) 0 obj\n<< /Length (\d+) >>\nstream\n", data):
        streams[int(m.group(1))] = data[m.end():m.end() + int(m.group(2))]
    pages = []
    for num in page_nums:
        page = re.search(rb"\n%d 0 obj\n([^\n]*)\nendobj" % num, data).group(1)
        content = int(re.search(rb"/Contents (\d+) 0 R", page).group(1))
        strings = [re.sub(rb"\\(.)", rb"\1", s).decode("latin-1")
                   for s in _TJ.findall(streams[content])]
        pages.append(strings)
    return pages
