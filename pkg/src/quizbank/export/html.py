"""Static single-file HTML rendering of an assembled test."""

from __future__ import annotations

from html import escape

from ..model import AssembledTest, letter_for

_STYLE = """\
body { font-family: sans-serif; max-width: 46em; margin: 2em auto; line-height: 1.4; }
section.question { margin-bottom: 1.2em; }
section.question h2 { font-size: 1em; white-space: pre-wrap; }
fieldset { border: none; padding-left: 1.5em; }
fieldset label { display: block; white-space: pre-wrap; }
table.answer-key { border-collapse: collapse; }
table.answer-key td, table.answer-key th { border: 1px solid #999; padding: 0.2em 0.8em; }"""


def export_html(test: AssembledTest, reveal_key: bool = False) -> bytes:
    cfg = test.config
    title = cfg.title or "Test"
    out = ["<!DOCTYPE html>",
           '<html lang="en">',
           "<head>",
           '<meta charset="utf-8">',
           f"<title>{escape(title)}</title>",
           f"<style>\n{_STYLE}\n</style>",
           "</head>",
           "<body>",
           f"<h1>{escape(title)}</h1>"]
    if cfg.subtitle:
        out.append(f'<p class="subtitle">{escape(cfg.subtitle)}</p>')
    if cfg.instructions:
        out.append(f'<p class="instructions">{escape(cfg.instructions)}</p>')
    out.append(f'<p class="count">Total questions: <span id="total">{len(test.items)}</span></p>')

    for item in test.items:
        name = f"q{item.position}"
        out.append(f'<section class="question" id="{name}">')
        out.append(f"<h2>{item.position}. {escape(item.question.stem)}</h2>")
        out.append("<fieldset>")
        for i, alt in enumerate(item.question.alternatives):
            letter = letter_for(i)
            out.append(f'<label><input type="radio" name="{name}" value="{letter}"> '
                       f"{letter}) {escape(alt.text)}</label>")
        out.append("</fieldset>")
        out.append("</section>")

    if reveal_key:
        out.append('<section class="answer-key">')
        out.append("<h2>Answer key</h2>")
        out.append('<table class="answer-key">')
        out.append("<tr><th>Question</th><th>Answer</th></tr>")
        for pos, letter in test.key.entries.items():
            out.append(f"<tr><td>{pos}</td><td>{letter}</td></tr>")
        out.append("</table>")
        out.append("</section>")
    out += ["</body>", "</html>"]
    return ("\n".join(out) + "\n").encode("utf-8")
