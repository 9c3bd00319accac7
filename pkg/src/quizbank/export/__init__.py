"""Renderers for assembled tests: PDF, static HTML and GIFT."""

from ..model import AssembledTest, QuestionBank
from .gift import export_gift
from .html import export_html
from .pdf import PdfRender, export_pdf, render_pdf


def test_as_bank(test: AssembledTest) -> QuestionBank:
    """The questions of ``test`` as presented, for GIFT or jqz output."""
    return QuestionBank(test.config.title, tuple(it.question for it in test.items))


test_as_bank.__test__ = False

__all__ = ["PdfRender", "export_gift", "export_html", "export_pdf", "render_pdf", "test_as_bank"]
