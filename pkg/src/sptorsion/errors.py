"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors exit with 2, domain errors
with 3, and internal verification failures with 4.
"""


class SptorsionError(Exception):
    pass


class UsageError(SptorsionError, ValueError):
    """Caller supplied arguments outside the supported contract."""


class DomainError(SptorsionError, ArithmeticError):
    """Mathematically invalid input (zero divisor, non-unit, invalid pair)."""


class VerificationError(SptorsionError, RuntimeError):
    """An exact post-hoc check of a computed object failed."""


class SearchExhausted(SptorsionError, RuntimeError):
    """A bounded search ended without a result."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (search bound {bound} exhausted)")
        self.bound = bound
