"""Exception types shared across the package."""


class SemikeyError(Exception):
    """Base class for all semikey errors."""


class MalformedTables(SemikeyError):
    """Operation tables have the wrong shape or out-of-range entries."""


class InvalidSemiring(SemikeyError):
    """Tables are well-formed but violate a semiring axiom."""

    def __init__(self, violations):
        self.violations = list(violations)
        preview = ", ".join(f"{v.law}{v.witness}" for v in self.violations[:4])
        more = "" if len(self.violations) <= 4 else f" (+{len(self.violations) - 4} more)"
        super().__init__(f"not a semiring: {preview}{more}")


class UnknownBuiltin(SemikeyError):
    """No builtin semiring with that name."""


class OrderLimitExceeded(SemikeyError):
    """Carrier too large for an exhaustive pairwise check."""


class DimensionMismatch(SemikeyError):
    """Matrices of different sizes were combined."""


class SemiringMismatch(SemikeyError):
    """Matrices over different ambient semirings were combined."""


class IdentityUnavailable(SemikeyError):
    """The semiring lacks the zero/one needed to build an identity matrix."""


class EmptyPolynomial(SemikeyError):
    """Polynomial has no terms and the semiring has no additive identity."""


class NonCentralCoefficient(SemikeyError):
    """Polynomial coefficient lies outside the multiplicative center."""


class DegenerateCenter(SemikeyError):
    """Center offers no usable nonzero coefficients for key generation."""


class NotIdempotent(SemikeyError):
    """The witness-set attack requires x + x = x for every element."""


class EmptyWitnessSet(SemikeyError):
    """Cannot sum an empty witness set in a semiring without a zero."""


class StructureMismatch(SemikeyError):
    """Declared matrix-over-field block structure does not fit the data."""


class InconsistentSystem(SemikeyError):
    """Linear system has no solution; input was not a valid transcript."""


class FormatError(SemikeyError):
    """A text fixture could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        where = "" if line is None else f" (line {line})"
        super().__init__(f"{message}{where}")
