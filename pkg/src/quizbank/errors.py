"""Exception hierarchy shared by every quizbank module.

Every error raised for bad *data* derives from :class:`QuizError`, so the
command line front end can separate domain failures (exit 1) from bugs.
"""

from __future__ import annotations


class QuizError(Exception):
    """Base class for all domain errors."""


class JqzError(QuizError):
    """A question file could not be turned into a bank."""


class MalformedXml(JqzError):
    """The document is not well-formed UTF-8 XML."""


class SchemaViolation(JqzError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class QuestionError(JqzError):
    """A question record is structurally fine but breaks a question rule."""

    def __init__(self, ordinal: int, message: str):
        self.ordinal = ordinal
        super().__init__(f"question {ordinal}: {message}")


class MultipleCorrect(QuestionError):
    pass


class NoCorrect(QuestionError):
    pass


class EmptyStem(QuestionError):
    pass


class EmptyAnswer(QuestionError):
    pass


class EmptyInput(QuizError):
    pass


class EmptyBank(QuizError):
    pass


class SubsetTooLarge(QuizError):
    pass


class PositionMismatch(QuizError):
    pass


class EmptyList(QuizError):
    pass


class RangeError(QuizError, ValueError):
    pass


class EmptyGroup(QuizError):
    pass


class DegenerateInput(QuizError):
    pass


class ConvergenceFailure(QuizError, ArithmeticError):
    pass


class CsvSchemaError(QuizError):
    def __init__(self, row: int, column: str, message: str):
        self.row = row
        self.column = column
        super().__init__(f"row {row}, column {column!r}: {message}")


class LetterError(CsvSchemaError):
    pass
