"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text (.gpd files, bracketing strings, terms)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class GuardError(RuntimeError):
    """A size or cost guard was exceeded."""
