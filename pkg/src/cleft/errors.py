"""Exception types shared across the package."""


class CleftError(Exception):
    pass


class ZeroDivisor(CleftError, ZeroDivisionError):
    pass


class NotDivisible(CleftError):
    pass


class NoInverseFound(CleftError):
    """Bounded search found no inverse. This is not a proof of non-invertibility."""


class ZeroElement(CleftError):
    pass


class NotInvertible(CleftError):
    pass


class DenominatorNotUnit(CleftError):
    pass


class UnboundGenerator(CleftError):
    pass


class NotFiniteFree(CleftError):
    pass


class DeterminantZero(CleftError):
    pass


class NotConvolutionInvertible(CleftError):
    pass


class AxiomFailure(CleftError):
    pass


class InvalidPrime(CleftError, ValueError):
    pass


class UnsupportedScheme(CleftError):
    pass


class HypothesisUnverified(CleftError):
    pass


class ClearingFailed(CleftError):
    pass


class ConfigInvalid(CleftError, ValueError):
    pass


class ParseError(CleftError, ValueError):
    pass


class RewriteFailed(CleftError):
    """An element is not a polynomial in the requested power of a variable."""
