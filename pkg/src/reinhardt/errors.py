"""Exception types raised across the package."""


class ReinhardtError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(ReinhardtError, ValueError):
    pass


class EmptyPolyhedron(ReinhardtError, ValueError):
    pass


class UnsupportedDimension(ReinhardtError, ValueError):
    pass


class DegenerateInput(ReinhardtError, ValueError):
    """Generators span less than the full space.

    ``point`` is set when every vertex coincides and there are no rays.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class EmptyPiece(ReinhardtError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BadExponent(ReinhardtError, ValueError):
    pass


class EvaluationFailure(ReinhardtError, ArithmeticError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BadGrid(ReinhardtError, ValueError):
    pass


class GammaZero(ReinhardtError, ValueError):
    pass


class RatioOutOfRange(ReinhardtError, ValueError):
    pass


class OutsidePolydisc(ReinhardtError, ValueError):
    pass


class DegreeExceedsWindow(ReinhardtError, ValueError):
    pass


class NoDominatingTorus(ReinhardtError, ValueError):
    pass


class UnknownName(ReinhardtError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidParameter(ReinhardtError, ValueError):
    pass
