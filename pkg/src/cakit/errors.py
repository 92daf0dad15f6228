"""Exception types shared across the toolkit."""


class CakitError(Exception):
    """Base class for all toolkit errors."""


class DescriptorMismatch(CakitError):
    """Operands belong to different coefficient fields."""


class DivisionByZero(CakitError, ZeroDivisionError):
    pass


class CharZero(CakitError):
    """A characteristic-p operation was requested over a characteristic-0 field."""


class NotAPthPower(CakitError):
    """No p-th root exists for the given element."""


class NotApplicable(CakitError):
    """Operation is deliberately unsupported for this field kind."""


class RingMismatch(CakitError):
    """Operands live in different polynomial rings."""


class FieldTooSmall(CakitError):
    """The coefficient field has too few elements for the requested search."""


class NotHomogeneous(CakitError):
    pass


class ZeroInput(CakitError):
    pass


class DegreeTooLow(CakitError):
    pass


class CharTwo(CakitError):
    """Gram-matrix methods are undefined in characteristic 2."""


class NotQuadric(CakitError):
    pass


class UnitIdeal(CakitError):
    """The ideal contains 1."""


class UnsupportedField(CakitError):
    pass


class CharacteristicMismatch(CakitError):
    pass


class GenericNotRegular(CakitError):
    """The family is not a regular sequence even over the generic point."""


class StabilizationNotFound(CakitError):
    """No truncation level up to n_max yields a regular sequence."""

    def __init__(self, n_max):
        super().__init__(f"no regular truncation found up to n={n_max}")
        self.n_max = n_max


class MaxIterations(CakitError):
    """Descent loop exceeded its iteration cap; carries the partial trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class BudgetExceeded(CakitError):
    """A configured work budget ran out.

    ``lower``/``upper`` optionally carry the bound interval established before
    the budget ran out (used by the strength oracle).
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class InputError(CakitError):
    """Malformed user input (CLI/JSON)."""
