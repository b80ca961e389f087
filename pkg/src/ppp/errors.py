"""Exception hierarchy shared by every module of the package."""


class PPPError(ValueError):
    """Base class for all errors raised by this package."""


class InvariantViolation(PPPError):
    pass


class PathsCross(InvariantViolation):
    pass


class EndpointMismatch(InvariantViolation):
    pass


class NotInFirstColumn(InvariantViolation):
    pass


class NotAdmissible(InvariantViolation):
    pass


class ParseError(PPPError):
    pass


class SpiralRow(PPPError):
    """A cylinder row closes on itself, so it has no rightmost cell."""


class InvalidRotation(PPPError):
    pass


class DegeneratedInput(PPPError):
    pass


class TrunkShapeMismatch(PPPError):
    pass


class InvalidMark(PPPError):
    pass


class NonInvertible(PPPError):
    pass


class BadValuation(PPPError):
    pass


class NonIntegralCoefficient(PPPError):
    pass


class SaturationNotReached(PPPError):
    pass
