"""Exception hierarchy shared by all modules."""


class PauliscopeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(PauliscopeError, ValueError):
    """Malformed numeric input (non-finite entries, wrong shape, non-Hermitian, bad trace).

    ``defect`` carries the measured violation when one exists.
    """

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class DomainError(PauliscopeError, ValueError):
    """A parameter lies outside the domain of the requested construction."""


class InvalidStateError(PauliscopeError, ValueError):
    """The operator is Hermitian with unit trace but not a positive state."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NoRealRootsError(PauliscopeError, ArithmeticError):
    """The quartic has a complex root pair, so it cannot come from a Hermitian K."""


class DiagnosticsError(PauliscopeError, RuntimeError):
    """Two independent numerical routes disagree beyond tolerance."""
