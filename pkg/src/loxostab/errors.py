"""Exception types raised by the library."""


class LoxostabError(Exception):
    """Base class for every error raised by this package."""


class DegenerateMap(LoxostabError):
    pass


class NotLoxodromic(LoxostabError):
    pass


class LinearMap(LoxostabError):
    """The map fixes infinity (c == 0); the fixed-point formulas need c != 0."""


class PoleDerivative(LoxostabError):
    pass


class DegenerateLine(LoxostabError):
    """A circle image degenerates into a straight line."""


class UnboundedImage(LoxostabError):
    def __init__(self, message, complement=None):
        super().__init__(message)
        # circle whose exterior is the (unbounded) image
        self.complement = complement


class DeltaTooLarge(LoxostabError):
    pass


class EmptyMargin(LoxostabError):
    pass


class RTooSmall(LoxostabError):
    pass


class OrbitHitPole(LoxostabError):
    def __init__(self, message, trial=None, step=None):
        super().__init__(message)
        self.trial = trial
        self.step = step


class NoEscape(LoxostabError):
    pass


class StartInAvoidedRegion(LoxostabError):
    pass
