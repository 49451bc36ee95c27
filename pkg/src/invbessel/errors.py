"""Exception hierarchy shared by every module of the package."""


class InvBesselError(Exception):
    """Base class for all errors raised by invbessel."""


class DomainError(InvBesselError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at the pole x = 0 of y_n or k_n."""


class NoSuchExtremum(InvBesselError, LookupError):
    """The requested infsupum index does not exist for this family/order."""


class NoSuchBranch(InvBesselError, LookupError):
    """The requested branch does not exist for this family/order."""


class OutOfRange(DomainError):
    """A target ordinate is not attained on the requested branch."""

    def __init__(self, message, lo=None, hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class BracketDiverged(InvBesselError, RuntimeError):
    """Geometric bracket expansion hit its limit without straddling the target."""


class NoFixedPoint(InvBesselError, LookupError):
    """The branch holds no solution of f(x) = x."""


class ParseError(InvBesselError, ValueError):
    """Malformed input text.  ``offset`` is the 0-based character offset."""

    def __init__(self, message, offset=0, text=None):
        super().__init__(message)
        self.offset = offset
        self.text = text

    def caret(self):
        """Two-line diagnostic with a caret under the offending character."""
        if self.text is None:
            return str(self)
        return f"{self.text}\n{' ' * self.offset}^ {self}"


class UnsupportedFunction(ParseError):
    """A function name outside the accepted vocabulary."""


class NotTransformable(InvBesselError, ValueError):
    """The equation cannot be brought to a row of the Laurent tables."""

    def __init__(self, message, hint=None):
        super().__init__(message if hint is None else f"{message} ({hint})")
        self.hint = hint


class MixedFactors(NotTransformable):
    """The equation mixes trigonometric, hyperbolic and exponential factors."""
