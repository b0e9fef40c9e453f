"""Exception hierarchy. Each class carries a stable ``code`` used by the CLI."""


class CatenoidError(Exception):
    code = "domain_error"


class NotCertifiedPositive(CatenoidError):
    """No positivity certificate could be built; the element may vanish."""

    code = "not_certified_positive"


class NotInvertible(CatenoidError):
    code = "not_invertible"


class DenominatorTooSmall(CatenoidError):
    code = "denominator_too_small"


class NonIntegrable(CatenoidError):
    code = "non_integrable"


class DegenerateParams(CatenoidError):
    code = "degenerate_params"


class EqualPlanck(CatenoidError):
    code = "equal_planck"


class IncompatibleRatio(CatenoidError):
    code = "incompatible_ratio"


class ConstraintViolation(CatenoidError):
    code = "constraint_violation"


class ExpressionError(CatenoidError):
    """Raised by the expression front end; ``position`` is a 0-based offset."""

    code = "parse_error"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class ParseError(ExpressionError):
    code = "syntax_error"


class UnknownSymbol(ExpressionError):
    code = "unknown_symbol"
