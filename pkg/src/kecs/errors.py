"""Exception hierarchy shared by every kecs module."""

from __future__ import annotations


class KecsError(Exception):
    """Base class for all errors raised by kecs."""

    #: short machine-parsable tag used by the CLI error prefix
    tag = "error"


class InputError(KecsError, ValueError):
    tag = "input-error"


class PreconditionError(InputError):
    tag = "precondition-error"


class ParameterError(InputError):
    tag = "parameter-error"


class FormatError(KecsError, ValueError):
    """Malformed text input; ``line`` is 1-based when known."""

    tag = "format-error"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetError(KecsError, RuntimeError):
    """A search ran out of budget.

    ``best_lower_bound`` is the best value found so far. It is a valid lower
    bound on the optimum but is *not* claimed optimal.
    """

    tag = "budget-error"

    def __init__(self, message: str, best_lower_bound=None, witness=None):
        self.best_lower_bound = best_lower_bound
        self.witness = witness
        self.optimal = False
        super().__init__(message)


class ConstructionError(KecsError, RuntimeError):
    """A built reduction instance failed one of its structural invariants."""

    tag = "construction-error"


class CertificateError(KecsError, ValueError):
    """A certificate (deletion set, coloring, ...) failed a structural check."""

    tag = "certificate-error"

    def __init__(self, message: str, variable: int | None = None):
        self.variable = variable
        super().__init__(message)
