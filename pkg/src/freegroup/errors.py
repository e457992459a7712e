class FreeGroupError(ValueError):
    """Domain error raised by freegroup operations."""

    kind = "domain"


class ParseError(FreeGroupError):
    kind = "parse"


class AlphabetMismatch(FreeGroupError):
    kind = "alphabet-mismatch"


class InvariantError(FreeGroupError):
    """Loaded or constructed data violates a structural invariant."""

    kind = "invariant"


class CapExceeded(FreeGroupError):
    kind = "cap-exceeded"
