"""Exception hierarchy.

Class names double as the diagnostic names reported by the command line
front end, so they are kept short and stable.
"""


class TwoDistanceError(Exception):
    """Base class for every error raised by this package."""


class InvariantViolation(TwoDistanceError, AssertionError):
    """A postcondition that is a theorem failed; indicates an internal bug."""


# scalar field

class MixedRadicands(TwoDistanceError, ValueError):
    pass


class DivisionByZero(TwoDistanceError, ZeroDivisionError):
    pass


class NegativeRadicand(TwoDistanceError, ValueError):
    pass


class ParseError(TwoDistanceError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f" in {text!r}"
        super().__init__(message)


# Gram matrices

class _IndexedError(TwoDistanceError, ValueError):
    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"{message} (index {index})"
        super().__init__(message)


class NotSquare(_IndexedError):
    pass


class NotSymmetric(_IndexedError):
    pass


class NotUnitDiagonal(_IndexedError):
    pass


class NotPSD(_IndexedError):
    pass


class NoRealSolution(TwoDistanceError, ValueError):
    pass


class DegenerateSystem(TwoDistanceError, ValueError):
    pass


class NonIntegralMultiplicity(TwoDistanceError, ValueError):
    pass


# constructions

class NotTwoDistance(TwoDistanceError, ValueError):
    pass


class NotRegular(TwoDistanceError, ValueError):
    pass


class AlreadyBalanced(TwoDistanceError, ValueError):
    pass


class BalancedInput(TwoDistanceError, ValueError):
    pass


class VectorsCollide(TwoDistanceError, ValueError):
    pass


class NotTight(TwoDistanceError, ValueError):
    pass


class FullRank(TwoDistanceError, ValueError):
    pass


class BadGrammianConstant(TwoDistanceError, ValueError):
    pass


class DegenerateDenominator(TwoDistanceError, ValueError):
    pass


class TargetOutOfRange(TwoDistanceError, ValueError):
    pass


class NotETF(TwoDistanceError, ValueError):
    pass


class AngleSumNotNegative(TwoDistanceError, ValueError):
    pass


class ConditionViolated(TwoDistanceError, ValueError):
    pass


class SizeMismatch(TwoDistanceError, ValueError):
    pass


# designs

class UnequalBlockSizes(TwoDistanceError, ValueError):
    pass


class NotPairBalanced(TwoDistanceError, ValueError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class IdentityViolation(TwoDistanceError, ValueError):
    pass


class NotQuasiSymmetric(TwoDistanceError, ValueError):
    def __init__(self, message, sizes=()):
        self.sizes = tuple(sizes)
        super().__init__(message)


class NonIntegralS(TwoDistanceError, ValueError):
    pass


# realization

class ToleranceExceeded(TwoDistanceError, ArithmeticError):
    def __init__(self, message, deviation=None):
        self.deviation = deviation
        super().__init__(message)


class UnsupportedOrder(TwoDistanceError, ValueError):
    pass
