"""
Exception hierarchy for the p-contact engine.

Constructors raise these; verification predicates return structured
failure reports instead.
"""

from typing import Optional


class PContactError(Exception):
    """Base class for all engine errors"""


class RejectedInput(PContactError, ValueError):
    """A precondition of an operation does not hold"""


class PoleError(PContactError, ZeroDivisionError):
    """Evaluation hit a zero coordinate carrying a negative exponent"""

    def __init__(self, variable: int, message: Optional[str] = None):
        self.variable = variable
        super().__init__(message or f"pole: variable {variable} is zero and appears with a negative exponent")


class SectionFormatError(RejectedInput):
    """Malformed section or certificate text"""

    def __init__(self, location: str, detail: str):
        self.location = location
        self.detail = detail
        super().__init__(f"{location}: {detail}")
