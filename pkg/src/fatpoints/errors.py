"""Exception hierarchy shared by every module."""


class FatPointsError(ValueError):
    """Base class for invalid input or violated preconditions."""


class NonPrimeModulus(FatPointsError):
    pass


class CharacteristicTooSmall(FatPointsError):
    pass


class DuplicatePoints(FatPointsError):
    pass


class DuplicateParameters(FatPointsError):
    pass


class SingularAtSupport(FatPointsError):
    pass


class EmptyScheme(FatPointsError):
    pass


class GapAbsent(FatPointsError):
    pass


class CurveDoesNotContainZ(FatPointsError):
    pass


class CriticalSearchFailed(FatPointsError):
    pass


class InsufficientRationalPoints(FatPointsError):
    pass


class DegenerateParameters(FatPointsError):
    pass


class PreconditionViolated(FatPointsError):
    pass
