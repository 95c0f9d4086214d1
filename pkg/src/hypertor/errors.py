"""Exception hierarchy shared by every layer of the engine."""


class HypertorError(Exception):
    """Base class for engine errors."""


class DivisionByZero(HypertorError, ZeroDivisionError):
    pass


class RingMismatch(HypertorError):
    pass


class ShapeMismatch(HypertorError):
    pass


class NotHomogeneous(HypertorError):
    pass


class UnitIdeal(HypertorError):
    """Raised where a dimension is requested for the zero ring."""


class LengthBoundExceeded(HypertorError):
    pass


class IllDefinedMap(HypertorError):
    pass


class NotAComplex(HypertorError):
    pass


class WindowTooShort(HypertorError):
    pass


class FactorizationCheckFailed(HypertorError):
    pass


class UndefinedTheta(HypertorError):
    def __init__(self, index, dim):
        super().__init__(f"Tor_{index} has positive dimension {dim}; theta is undefined")
        self.index = index
        self.dim = dim


class StabilizationFailed(HypertorError):
    pass


class InfiniteLengthAt(HypertorError):
    def __init__(self, index):
        super().__init__(f"Tor_{index} does not have finite length")
        self.index = index


class ZeroModule(HypertorError):
    pass


class HypothesisNotMet(HypertorError):
    pass


class NotFiniteIntersection(HypertorError):
    pass


class WrongCharacteristic(HypertorError):
    pass


class CharacteristicWarning(UserWarning):
    """The Jacobian criterion may be unreliable in this characteristic."""
