"""Exception types shared across the package."""


class RCTError(Exception):
    """Base class for domain errors raised by this package."""


class LengthError(RCTError, ValueError):
    """A length precondition on binary sequences was violated."""


class LevelMismatch(RCTError, ValueError):
    """A node length is not among the declared tree levels."""


class EqualInput(RCTError, ValueError):
    """An operation defined on distinct sequences received equal ones."""


class PreconditionError(RCTError, ValueError):
    """An argument does not satisfy the operation's precondition."""


class BudgetExceeded(RCTError, RuntimeError):
    """Exhaustive search would exceed the configured budget."""


class UnknownUniverse(RCTError, KeyError):
    """The experiment driver does not know the requested universe."""
