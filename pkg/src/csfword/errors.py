"""Shared exception types."""


class ParseError(ValueError):
    """Malformed word or graph text. Carries an optional position."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class ValidationError(RuntimeError):
    """A constructed word or graph failed its post-construction checks."""


class BoundsExceededError(RuntimeError):
    """An exhaustive routine was asked to run past its configured bounds."""
