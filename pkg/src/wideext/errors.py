"""Exception hierarchy shared by every module.

The CLI prints ``type(exc).__name__`` for domain errors, so class names are
part of the external interface.
"""


class WideExtError(Exception):
    """Base class for all domain errors."""


class ZeroRank(WideExtError):
    pass


# polygons
class NotConcave(WideExtError):
    pass


class NonMonotoneAbscissa(WideExtError):
    pass


class BadEndpoints(WideExtError):
    pass


class EndpointMismatch(WideExtError):
    pass


class SlopeNotDecreasing(WideExtError):
    pass


class EnumerationCapExceeded(WideExtError):
    pass


# deformation oracle
class EmptyCompetitorSet(WideExtError):
    pass


class OutOfRegime(WideExtError):
    pass


class InconsistentTotals(WideExtError):
    pass


# exceptional bundles
class NotExceptionalCandidate(WideExtError):
    pass


class DisjointnessViolation(WideExtError):
    pass


class SlopeOutOfWindow(WideExtError):
    pass


class UncoveredSlope(WideExtError):
    """Raised where a covered slope is mandatory (δ lookups return UNCOVERED)."""


# GIT
class AllZero(WideExtError):
    pass


class OracleDisagreement(WideExtError):
    pass


# generic extensions
class ShapeMismatch(WideExtError):
    pass


class HypothesesNotMet(WideExtError):
    pass


class ParseError(WideExtError):
    pass
