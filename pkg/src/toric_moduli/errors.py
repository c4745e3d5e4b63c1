"""Exception hierarchy shared by every module of the package."""


class ToricError(ValueError):
    """Base class for domain errors (mapped to exit status 1 by the CLI)."""


class DegenerateHull(ToricError):
    pass


class ZeroVector(ToricError):
    pass


class InvalidPolygon(ToricError):
    """Vertex data does not describe a strictly convex polygon.

    ``index`` names the offending vertex in the input order, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotDelzant(ToricError):
    pass


class NonPositiveParameter(ToricError):
    pass


class ConstraintViolation(ToricError):
    pass


class ZeroSegment(ToricError):
    pass


class ChopTooLarge(ToricError):
    pass


class ConvexityBroken(ToricError):
    pass


class SlideOutOfRange(ToricError):
    def __init__(self, message, interval):
        super().__init__(message)
        self.interval = interval


class IrrationalEdge(ToricError):
    pass


class DefectOne(ToricError):
    pass


class EpsilonTooLarge(ToricError):
    pass


class ToleranceUnachievable(ToricError):
    pass


class DecompositionFailed(ToricError):
    pass


class ParameterOutOfRange(ToricError):
    pass


class ParseError(ToricError):
    pass
