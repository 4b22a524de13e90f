"""
Exception hierarchy shared by the core modules and the command line
"""

from typing import Optional


class CongruenceKitError(Exception):
    """Base class for every error raised on purpose by congruence-kit."""


class InputError(CongruenceKitError):
    """Unparsable or malformed user input (exit status 2)."""

    def __init__(self, message: str, source: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.source = source
        self.line = line
        self.column = column
        location = ""
        if source:
            location = source
            if line is not None:
                location += f":{line}"
                if column is not None:
                    location += f":{column}"
            location += ": "
        super().__init__(f"{location}{message}")


class InvalidPresentationError(CongruenceKitError):
    """A surgery presentation or surgery move violates its invariants."""


class InvalidDiagramError(CongruenceKitError):
    """A link diagram or braid word violates its invariants."""


class InvalidFormError(CongruenceKitError):
    """A trilinear form is malformed, or cannot be derived for a manifold."""


class NoCertificateError(CongruenceKitError):
    """No Burnside certificate exists for the requested (d, r)."""


class BudgetExceededError(CongruenceKitError):
    """The GL(n, Z_d) search space is larger than the configured budget."""

    def __init__(self, n: int, d: int, order: int, budget: int):
        self.n = n
        self.d = d
        self.order = order
        self.budget = budget
        super().__init__(
            f"|GL({n}, Z_{d})| = {order} exceeds the search budget of {budget}"
        )


class InvalidGroupError(CongruenceKitError):
    """A multiplication table fails the group axioms."""
