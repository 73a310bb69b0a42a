"""Exception hierarchy for scichern."""


class SciChernError(Exception):
    """Base class for every error raised by this package."""


class InvalidIndex(SciChernError, ValueError):
    pass


class InvariantBreach(SciChernError, ArithmeticError):
    """A value that the theory guarantees to be nonzero/positive was not."""


class BudgetTooSmall(SciChernError, ValueError):
    pass


class BudgetMismatch(SciChernError, ValueError):
    pass


class ExpansionMismatch(SciChernError):
    """Symbolic construction disagrees with a hard-coded expansion."""


class WrongConcavity(SciChernError, ValueError):
    pass


class NegativeLeadingCoefficient(SciChernError, ValueError):
    pass


class NotCubic(SciChernError):
    pass


class DenominatorSignChange(SciChernError):
    pass


class NotRepresentable(SciChernError):
    pass


class ParseError(SciChernError, ValueError):
    pass
