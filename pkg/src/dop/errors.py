"""Exception types raised by the dop package."""


class DopError(Exception):
    """Base class for all errors raised by this package."""


class CycleError(DopError):
    """A relation list does not describe a partial order."""


class ParseError(DopError):
    pass


class UnknownLabel(DopError):
    pass


class InvalidWitness(DopError):
    pass


class EmptyInput(DopError):
    pass


class DimensionTooLarge(DopError):
    pass


class ZeroFunctional(DopError):
    pass


class GuardExceeded(DopError):
    pass
