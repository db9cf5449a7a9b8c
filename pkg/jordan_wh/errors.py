from __future__ import annotations


class JordanError(ValueError):
    """Base class for every error raised by jordan_wh."""


class AlgebraMismatch(JordanError):
    pass


class Singular(JordanError):
    pass


class SingularInSubalgebra(Singular):
    pass


class DomainError(JordanError):
    pass


class ConvergenceFailure(JordanError):
    pass


class NotIdempotent(JordanError):
    pass


class NotInSubalgebra(JordanError):
    pass


class NotInCone(JordanError):
    pass


class NotInteriorCone(NotInCone):
    pass


class OutOfInterval(JordanError):
    pass


class InvalidBoundaryPoint(JordanError):
    pass


class NotMember(JordanError):
    pass


class ParameterOutOfRange(JordanError):
    pass


class ConfigError(JordanError):
    pass


class RetryExhausted(JordanError):
    pass


class Rejected(JordanError):
    """Raised by a check when a sample trips the conditioning guard."""


class GuaranteeViolated(JordanError):
    """An identity that holds mathematically failed numerically."""


class ParseError(JordanError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position
