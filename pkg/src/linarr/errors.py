"""Exception types shared across the package."""


class LinarrError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(LinarrError):
    """Malformed or inconsistent user input (parse errors, bad candidates, ...)."""


class NotBiPencilError(LinarrError):
    """The arrangement is not covered by two points with p + q = n."""


class BudgetExceededError(LinarrError):
    """A combinatorial search would exceed the configured candidate cap."""


class NonIsolatedSingularityError(LinarrError):
    """The Jacobian quotient does not vanish above the expected socle degree."""


class DegenerateCaseError(LinarrError):
    """A computation step does not apply to a degenerate input (e.g. two lines)."""


class ConsistencyError(LinarrError):
    """An internal cross-check failed; indicates a bug, not bad input."""
