"""Exception hierarchy shared by all modules.

Every error raised by the library derives from LocalSymbolError so callers
(and the CLI) can distinguish library failures from programming errors.
"""


class LocalSymbolError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(LocalSymbolError):
    """A polynomial that must be nonzero turned out to be zero."""


class NonHomogeneous(LocalSymbolError):
    """Terms of mixed total degree in a homogeneous polynomial."""


class DegreeTooHigh(LocalSymbolError):
    """Irreducibility cannot be decided above degree 3 without a trust flag."""


class InvalidParametrization(LocalSymbolError):
    """Parametrization components share a root, have wrong degree, or do not
    satisfy the curve equation."""


class UnsupportedDegree(LocalSymbolError):
    """No automatic parametrization for curves of this degree."""


class NoRationalPointFound(LocalSymbolError):
    """Conic rational-point search exhausted its height bound."""


class NotAUnit(LocalSymbolError):
    """Evaluation requested at a zero or pole."""


class NonSplitFunction(LocalSymbolError):
    """A divisor-level operation needs linear factors only."""


class BasePointOnDivisor(LocalSymbolError):
    """The base point of a bi-local symbol lies on a divisor support."""


class CoincidentPoints(LocalSymbolError):
    """The point of interest and the base point coincide."""


class PointNotOnCurve(LocalSymbolError):
    """A site point does not lie on the given curve."""


class UniformizerThroughPoint(LocalSymbolError):
    """A non-curve component of the uniformizer divisor passes through the
    site point."""


class NonUniquePreimage(LocalSymbolError):
    """The parametrization is not injective over the requested point."""


class RestrictionVanishes(LocalSymbolError):
    """A cancelled restriction composed to zero; the factored input is
    corrupt (a second copy of the curve hidden in a factor)."""


class NonRationalSite(LocalSymbolError):
    """An intersection point on the curve is irrational; the site product
    cannot be enumerated exactly."""


class HypothesisViolation(LocalSymbolError):
    """Input outside the scope of the reciprocity law being applied."""


class InternalInconsistency(LocalSymbolError):
    """Two independent computation paths of the same symbol disagree.

    This must never fire; it turns proved identities into runtime checks.
    """


class SingularityOnPath(LocalSymbolError):
    """An integration path passes too close to a zero or pole."""


class NoConvergence(LocalSymbolError):
    """Adaptive integration failed to reach the requested tolerance."""


class ParseError(LocalSymbolError):
    """Malformed polynomial, function, or scene text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ValidationError(LocalSymbolError):
    """A declared object violates one of its structural invariants."""
