"""Exception types raised across the package."""


class TangentialError(ValueError):
    """Base class for every domain error raised by this package."""


class TooFewVertices(TangentialError):
    pass


class AngleSumViolation(TangentialError):
    pass


class NonConvexAngle(TangentialError):
    pass


class NonPositiveTangentLength(TangentialError):
    pass


class IndexOutOfRange(TangentialError, IndexError):
    pass


class EqualIndices(TangentialError):
    pass


class DegenerateTriangle(TangentialError):
    pass


class NegativeDiscriminant(TangentialError):
    pass


class InapplicableBound(TangentialError):
    pass


class NonPositiveSide(TangentialError):
    pass


class WrongArity(TangentialError):
    pass


class ResolutionTooCoarse(TangentialError):
    pass


class NonConvergent(TangentialError, RuntimeError):
    pass


class UnknownTable(TangentialError, KeyError):
    pass


class UnsupportedExponent(TangentialError):
    pass


class ParameterOutOfRange(TangentialError):
    pass


class UnknownCurve(TangentialError, KeyError):
    pass
