"""
Exception hierarchy shared by every module of the toolkit.
"""

from typing import Optional


class KinshipError(Exception):
    """Base class for errors raised deliberately by the toolkit."""


class ParseError(KinshipError, ValueError):
    """Malformed text input.

    Args:
        message: What was expected
        text: The full text being parsed
        position: 0-based index of the offending character
    """

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


def parse_int(token: str, text: str, position: int) -> int:
    """int(token), with the interpreter's digit limit reported as a ParseError."""
    try:
        return int(token)
    except ValueError as e:
        raise ParseError(f"number too long ({e})", text, position) from e


class ValidationError(KinshipError, ValueError):
    """Well-formed input that violates a type invariant."""


class DomainError(KinshipError, ValueError):
    """Operation undefined on an otherwise valid value."""


class ResourceLimitError(KinshipError, RuntimeError):
    """Requested depth or count exceeds the configured bound."""


class UsageError(KinshipError, ValueError):
    """Unknown suite, format or tree identifier."""
