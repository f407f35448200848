"""Exception hierarchy for hulldist."""


class HullDistError(Exception):
    """Base class for all hulldist errors."""


class InvalidInput(HullDistError):
    """Malformed set, gauge, or parameter."""


class UnsupportedPrimitive(InvalidInput):
    """Operation restricted to finite point sets received a segment/polygon."""


class MTooLarge(InvalidInput):
    """Set-average order above the supported maximum of 3."""


class ZeroDirection(InvalidInput):
    """Direction vector must be nonzero."""


class InvalidSideLengths(InvalidInput):
    """Side lengths must be nonnegative."""


class NotStrictlyConvex(InvalidInput):
    """Gauge must be strictly convex for bisector operations."""


class DegenerateTriangle(InvalidInput):
    """Triangle vertices are collinear or coincident."""


class NotSymmetric(InvalidInput):
    """Polygon is not origin-symmetric."""


class NotInHull(InvalidInput):
    """Probe point lies outside the convex hull of the sumset."""


class NotExceptional(InvalidInput):
    """Probe point is covered by a translated hull, no witness exists."""


class SolverDiverged(HullDistError):
    """Iterative solver failed to reach its residual target."""


class RootNotBracketed(SolverDiverged):
    """Scalar root finder found no sign change on the prescribed bracket."""


class BudgetExceeded(HullDistError):
    """Branch-and-bound hit its box cap before certifying the target width.

    Carries the best (partial) enclosure found so far in ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NoWitnessFound(HullDistError):
    """Exhaustive parallelogram search failed (theorem violation or tolerance starvation)."""


class NoPairFound(HullDistError):
    """Exhaustive simplex-pair search failed (theorem violation)."""


class TooFewContacts(HullDistError):
    """Fewer than four contact points found; John solver likely failed."""


class NoEmptyArc(HullDistError):
    """Contact set covers the boundary; the body is (numerically) an ellipse."""


class ConstructionFailed(HullDistError):
    """Counterexample construction could not certify its strict inequality."""


class BoundViolation(HullDistError):
    """A proven inequality failed numerically beyond tolerance."""


class AssertionFailed(HullDistError):
    """A verification suite found an offending report.

    Carries the report in ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
