"""Exception hierarchy shared by all modules."""


class QShuffleError(Exception):
    """Base class for every error raised by qshuffle."""


class PoleAtValue(QShuffleError, ZeroDivisionError):
    pass


class VariantMismatch(QShuffleError, TypeError):
    pass


class ParseError(QShuffleError, ValueError):
    pass


class SlotOutOfRange(QShuffleError, ValueError):
    pass


class NotDivisible(QShuffleError, ArithmeticError):
    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class UnmappedVariable(QShuffleError, KeyError):
    pass


class ZeroScale(QShuffleError, ValueError):
    pass


class ZeroInput(QShuffleError, ValueError):
    pass


class ZeroPolynomial(QShuffleError, ValueError):
    pass


class InvalidCartanData(QShuffleError, ValueError):
    pass


class NegativeCount(QShuffleError, ValueError):
    pass


class InvalidZetaDatum(QShuffleError, ValueError):
    pass


class SignMismatch(QShuffleError, ValueError):
    pass


class BudgetExhausted(QShuffleError, RuntimeError):
    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}
