"""Exception hierarchy for the chainlab library.

Every error raised by the library derives from ChainlabError so callers
can catch library failures without masking programming errors.
"""


class ChainlabError(Exception):
    """Base class for all chainlab errors."""


class ParseError(ChainlabError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ArityError(ChainlabError):
    """One function identifier used with two different argument counts."""


class DivisionByZero(ChainlabError):
    """A zero denominator arose during exact rational arithmetic."""


class OrderOverflow(ChainlabError):
    """A derivative exceeded the maximum order of the jet context."""


class PoleError(ChainlabError):
    """A numeric instantiation hit a pole or a non-real fractional power."""


class ProbeSingular(ChainlabError):
    """Every attempted numeric instantiation failed or was inconclusive."""


class InconsistentBinding(ChainlabError):
    """The same atom appeared twice in a substitution binding list."""


class UnsupportedSubstitution(ChainlabError):
    """A binding cannot be applied inside an antiderivative node."""


class NonMonic(ChainlabError):
    """Equation is not monic (coefficient 1) in its highest derivative."""


class DegenerateMap(ChainlabError):
    """A fractional linear map with vanishing determinant."""


class SingularJacobian(ChainlabError):
    """The transformation Jacobian vanishes on the source equation."""


class DegenerateDenominator(ChainlabError):
    """The denominator of a transformed parameter function vanishes."""


class CaseMismatch(ChainlabError):
    """Inputs do not have the shape declared for the reduction case."""


class ParityError(ChainlabError):
    """Even order with negative determinant: fractional power not real."""


class NoSolution(ChainlabError):
    """The linear system for a witness group element is inconsistent."""


class NotRational(ChainlabError):
    """Classification requires a rational function of the base variable."""


class NotCubic(ChainlabError):
    """Second order equation of degree > 3 in the first derivative."""


class NotPolynomial(ChainlabError):
    """Non-polynomial dependence where a polynomial one is required."""


class UnsupportedOrder(ChainlabError):
    """No residual list is defined for the requested order."""


class ConstraintViolation(ChainlabError):
    """Constants violate the constraints of the linearizing family."""


class BranchMismatch(ChainlabError):
    """Transformation components inconsistent with the declared branch."""


class MissingAlpha(ChainlabError):
    """A generator family that needs a coefficient function got none."""
