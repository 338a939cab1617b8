"""Exception hierarchy.

Three families map onto the CLI exit codes: malformed input (2),
mathematical precondition failures (3) and theorem-check mismatches (4).
"""

from __future__ import annotations


class GoppaError(Exception):
    """Base class for every error raised by this package."""


class SpecError(GoppaError, ValueError):
    """Malformed user input (field spec, polynomial text, point list)."""


class PreconditionError(GoppaError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class NotPrime(PreconditionError):
    pass


class ReducibleModulus(PreconditionError):
    pass


class NonPrimitiveModulusRoot(PreconditionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class BothZero(PreconditionError):
    pass


class DuplicatePoints(PreconditionError):
    pass


class BadIndex(PreconditionError):
    pass


class DenominatorVanishes(PreconditionError):
    """A weight/denominator polynomial vanishes at an evaluation point."""

    def __init__(self, point, message: str | None = None):
        self.point = point
        super().__init__(message or f"polynomial vanishes at point {point}")


class GeneratorVanishes(DenominatorVanishes):
    pass


class BadDimension(PreconditionError):
    pass


class ExponentOutOfFootprint(PreconditionError):
    pass


class ZeroCode(PreconditionError):
    pass


class DegenerateCode(PreconditionError):
    pass


class HypothesisViolated(PreconditionError):
    """Inputs fall outside the hypothesis under which an identity is known to hold."""


class CertificateInvalid(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class MismatchDetected(GoppaError):
    """Two independent constructions that must agree did not.

    This always signals a bug (or a false identity); it is never swallowed.
    """
