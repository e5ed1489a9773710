"""Exception hierarchy shared by all modules."""


class HerringboneError(Exception):
    """Base class for every error raised by this package."""


class ConwayInputError(HerringboneError, ValueError):
    pass


class EmptyInput(ConwayInputError):
    pass


class NonPositiveSite(ConwayInputError):
    pass


class FirstOrLastSiteTooSmall(ConwayInputError):
    pass


class ParseError(ConwayInputError):
    pass


class NotATwoComponentLink(HerringboneError, ValueError):
    pass


class NotDivisible(HerringboneError, ArithmeticError):
    pass


class UndefinedAtZero(HerringboneError, ArithmeticError):
    pass


class SignPatternViolation(HerringboneError, ArithmeticError):
    pass


class ZeroDeterminant(HerringboneError, ArithmeticError):
    pass


class MoveNotAvailable(HerringboneError, ValueError):
    pass


class StateBudgetExceeded(HerringboneError, RuntimeError):
    pass
