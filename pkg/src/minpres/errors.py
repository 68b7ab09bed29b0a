"""Exception types raised by the library."""


class MinpresError(Exception):
    """Base class for all library errors."""


class EntryRuleViolation(MinpresError):
    """A non-zero entry whose row grade is not <= its column grade."""


class ReparamFailure(MinpresError):
    """A generator column is not in the span of the kernel basis (invalid firep)."""


class BAProductNonzero(MinpresError):
    """B @ A != 0 over GF(2)."""


class ParseError(MinpresError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DimensionMismatch(MinpresError):
    pass


class TooLarge(MinpresError):
    pass


class MeshFormatError(MinpresError):
    pass


class OptionConflict(MinpresError):
    """Mutually exclusive pipeline options were requested together."""
