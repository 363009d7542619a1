"""Exception hierarchy shared by the solver modules."""


class ConfKGError(Exception):
    """Base class for all package errors."""


class DomainError(ConfKGError, ValueError):
    pass


class NonConvergence(ConfKGError, ArithmeticError):
    pass


class NegativeRadicand(ConfKGError, ArithmeticError):
    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)


class NoPhysicalBranch(ConfKGError, ArithmeticError):
    pass


class NegativeRadical(ConfKGError, ArithmeticError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ImaginaryEnergy(ConfKGError, ArithmeticError):
    def __init__(self, message, energy_sq=None):
        super().__init__(message)
        self.energy_sq = energy_sq


class PoleError(ConfKGError, ZeroDivisionError):
    pass


class IrrationalExponent(ConfKGError, ValueError):
    pass


class NoBracket(ConfKGError, ArithmeticError):
    def __init__(self, message, endpoints=()):
        super().__init__(message)
        self.endpoints = tuple(endpoints)


class ConvergenceError(ConfKGError, ArithmeticError):
    pass


class NormalizationError(ConfKGError, ArithmeticError):
    pass
