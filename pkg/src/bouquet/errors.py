"""Exception types shared across the package."""


class BouquetError(Exception):
    """Base class for all package-specific errors."""


class EmptyWordError(BouquetError, ValueError):
    """A path word must contain at least one letter."""


class ZeroExponentError(BouquetError, ValueError):
    """Letter exponents must be nonzero."""


class AdjacentSameLoopError(BouquetError, ValueError):
    """Consecutive letters (cyclically, when there are two or more) must sit
    on distinct loops."""


class InfeasibleScopeError(BouquetError, ValueError):
    """The requested enumeration scope admits no words (e.g. N < r)."""


class ScopeTooLargeError(BouquetError, RuntimeError):
    """The enumeration would exceed the configured word budget."""


class FormulaMismatchError(BouquetError, AssertionError):
    """Two formulas that must agree evaluated differently; indicates an
    implementation bug, never an expected runtime condition."""


class NegativeExponentError(BouquetError, ValueError):
    """The operation is defined only for words with all exponents positive."""


class NonIntegralResultError(BouquetError, ArithmeticError):
    """An exact-rational computation that must yield an integer did not."""


class BoundMismatchError(BouquetError, ValueError):
    """Series operands carry different truncation bounds or variable counts."""


class NonUnitConstantTermError(BouquetError, ValueError):
    """Series inversion needs a constant term invertible in the coefficient
    ring (nonzero over the rationals, +-1 over the integers)."""


class BadConstantTermError(BouquetError, ValueError):
    """exp needs constant term 0; log needs constant term 1."""


class WordFormatError(BouquetError, ValueError):
    """The textual word form could not be parsed."""
