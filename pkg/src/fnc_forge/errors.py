"""Exception hierarchy shared by all modules."""


class FncForgeError(ValueError):
    """Base class for every error raised by this package."""


class NotPrime(FncForgeError):
    pass


class TooLarge(FncForgeError):
    """Request exceeds the configured desk-scale cap."""


class DivisionByZero(FncForgeError, ZeroDivisionError):
    pass


class LevelMismatch(FncForgeError):
    """Operands live in different fields (or different tower levels)."""


class CapExceeded(FncForgeError):
    """Roots were not all found inside the searched extensions."""


class BothZero(FncForgeError):
    pass


class ConstantInput(FncForgeError):
    pass


class NotMVSP(FncForgeError):
    pass


class TooFewValues(FncForgeError):
    pass


class NoDecomposition(FncForgeError):
    pass


class BadSubset(FncForgeError):
    pass


class BadValueSet(FncForgeError):
    pass


class NonUnitLeader(FncForgeError):
    pass


class MethodDisagreement(FncForgeError):
    pass


class NotARootProfile(FncForgeError):
    pass


class DegreeTooHigh(FncForgeError):
    pass


class PreconditionFailed(FncForgeError):
    pass


class CharDividesN(FncForgeError):
    pass


class BadNu(FncForgeError):
    pass


class ParseError(FncForgeError):
    pass
