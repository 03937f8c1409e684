class RingClassError(Exception):
    """Base class for errors raised by this package."""


class NonFundamentalError(RingClassError, ValueError):
    def __init__(self, d, square=None):
        self.d = d
        self.square = square
        if square and square > 1:
            msg = f"{d} is not a fundamental discriminant (divisible by {square}^2)"
        else:
            msg = f"{d} is not a fundamental discriminant"
        super().__init__(msg)


class InadmissibleError(RingClassError, ValueError):
    pass


class ResourceError(RingClassError, RuntimeError):
    """A bounded search gave up; raised instead of returning a guess."""
