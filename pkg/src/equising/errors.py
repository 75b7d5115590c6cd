"""Exception hierarchy shared by all modules."""


class EquisingError(Exception):
    """Base class."""


class ParseError(EquisingError, ValueError):
    def __init__(self, message: str, pos: int | None = None, line: int | None = None):
        self.pos = pos
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"column {pos + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.message = message


class RingMismatch(EquisingError, ValueError):
    pass


class ResourceLimitExceeded(EquisingError):
    pass


class NotIsolated(EquisingError):
    """A colength that had to be finite is infinite."""


class NotICIS(EquisingError):
    pass


class GenericityFailure(EquisingError):
    """Random choices kept disagreeing up to the retry cap."""


class NoStabilization(EquisingError):
    def __init__(self, message: str, table=None):
        super().__init__(message)
        self.table = table


class PreconditionError(EquisingError, ValueError):
    pass


class InvalidPath(EquisingError, ValueError):
    pass


class HypothesisFailure(EquisingError):
    """A standing hypothesis on the family (f|Y = 0, k < a, ...) fails."""
