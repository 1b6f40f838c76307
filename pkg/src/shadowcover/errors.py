class ShadowCoverError(Exception):
    """Base class for every error raised by the package."""


class RankDeficient(ShadowCoverError):
    pass


class Singular(ShadowCoverError):
    pass


class NumericalFailure(ShadowCoverError):
    pass


class DegenerateInput(ShadowCoverError):
    pass


class DimensionMismatch(ShadowCoverError):
    pass


class ZeroDirection(ShadowCoverError):
    pass


class SingularMap(ShadowCoverError):
    pass


class BadBasis(ShadowCoverError):
    pass


class Unbounded(ShadowCoverError):
    pass


class BadParameter(ShadowCoverError):
    pass


class PointBody(ShadowCoverError):
    pass


class NotASimplex(ShadowCoverError):
    pass


class PreconditionFailed(ShadowCoverError):
    """Raised when a covering precondition is violated.

    ``direction`` holds the first direction at which coverage failed.
    """

    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


class IllConditioned(ShadowCoverError):
    pass


class ZeroVolume(ShadowCoverError):
    pass


class BadStrategy(ShadowCoverError):
    pass


class BadCodimension(ShadowCoverError):
    pass


class SweepInconclusive(ShadowCoverError):
    """A passing covering sweep was followed by an infeasible dilate certificate."""
