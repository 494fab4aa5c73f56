"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems (``ValueError``
subclasses) exit 2, budget overruns exit 3, and ``InvariantViolation``
exits 1.
"""


class BrieskornError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(BrieskornError, ValueError):
    """An operation was called on input outside its domain."""


class BudgetExceededError(BrieskornError):
    """An enumeration would visit more tuples than the configured budget."""

    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(
            f"enumeration of {size} tuples exceeds budget {budget}")


class TruncationError(BrieskornError, ValueError):
    """Truncated series data cannot certify the requested answer."""


class SameBranchError(BrieskornError, ValueError):
    """Two branches coincide, so their intersection number is infinite."""


class GraphFormatError(BrieskornError, ValueError):
    """A plumbing graph could not be parsed or is outside the supported class."""


class InvariantViolation(BrieskornError, RuntimeError):
    """An internal consistency check failed. Always a bug."""
